"""Tests for the multisegment calculator."""
