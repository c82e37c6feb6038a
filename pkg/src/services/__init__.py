"""Lattice, datum, Galois, cohomology and fan algorithms"""
