"""Tests package for the Project Management API."""
