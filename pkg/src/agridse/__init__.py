"""Design space exploration for agricultural drone and rover fleets."""

__version__ = "0.1.0"
