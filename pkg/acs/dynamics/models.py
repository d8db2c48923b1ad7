"""Phase-space points and sampled trajectories."""

from dataclasses import dataclass

import numpy as np

from acs.dynamics.validators import validate_point
from acs.errors import ParameterError
from acs.specfun import FloatArray


@dataclass(frozen=True)
class PhasePoint:
    """A point ``(q, p)`` of the half-plane.

    Attributes:
        q (float): Position, positive
        p (float): Momentum
    """

    q: float
    p: float

    def __post_init__(self) -> None:
        """Validate the point.

        Raises:
            ParameterError: If ``q <= 0`` or a coordinate is not finite
        """
        is_valid, error = validate_point(self.q, self.p)
        if not is_valid:
            raise ParameterError(str(error))

    def to_dict(self) -> dict[str, float]:
        """Convert the point to a dictionary.

        Returns:
            dict: q and p
        """
        return {'q': self.q, 'p': self.p}


@dataclass(frozen=True)
class Bounce:
    """Turning point of a trajectory.

    Attributes:
        time (float): Time at which ``qp`` vanishes
        q_min (float): Smallest position reached, ``xi / sqrt(H_sc)``
        energy (float): Conserved ``H_sc``
    """

    time: float
    q_min: float
    energy: float

    def to_dict(self) -> dict[str, float]:
        """Convert the bounce to a dictionary.

        Returns:
            dict: Time, minimal position and energy
        """
        return {'time': self.time, 'q_min': self.q_min, 'energy': self.energy}


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution of the semiclassical flow with its phase.

    Attributes:
        times (FloatArray): Sample times
        q (FloatArray): Positions
        p (FloatArray): Momenta
        phase (FloatArray): Dynamical phase at each sample
        energy (float): Conserved ``H_sc``
    """

    times: FloatArray
    q: FloatArray
    p: FloatArray
    phase: FloatArray
    energy: float

    def __len__(self) -> int:
        """Number of samples."""
        return int(self.times.size)

    def point(self, index: int) -> PhasePoint:
        """Return one sample as a point.

        Args:
            index (int): Sample index

        Returns:
            PhasePoint: The sample
        """
        return PhasePoint(float(self.q[index]), float(self.p[index]))

    @property
    def q_min(self) -> float:
        """Smallest sampled position."""
        return float(np.min(self.q))

    def rows(self) -> list[tuple[float, float, float, float]]:
        """Samples as ``(t, q, p, phase)`` tuples."""
        return [
            (float(t), float(q), float(p), float(phi))
            for t, q, p, phi in zip(
                self.times,
                self.q,
                self.p,
                self.phase,
                strict=True,
            )
        ]
