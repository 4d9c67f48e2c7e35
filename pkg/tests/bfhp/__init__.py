"""Tests for the BFHP toolkit."""
