"""JC Entanglement - two-atom, two-mode Jaynes-Cummings dynamics in the rotating-wave approximation."""

__version__ = "0.1.0"
