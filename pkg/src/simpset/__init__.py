"""Exact computations with finite simplicial sets, correspondences and bifibrations."""
