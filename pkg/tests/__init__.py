"""Tests for nomacomp."""
