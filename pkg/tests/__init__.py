"""Test suite for the jc-entanglement simulator."""
