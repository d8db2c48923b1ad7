"""Semiclassical Hamiltonian, label flow and dynamical phase."""

from acs.dynamics.models import Bounce, PhasePoint, Trajectory
from acs.dynamics.services import (
    bounce,
    evolve_cs,
    flow,
    h_sc,
    phase,
    trajectory,
)
