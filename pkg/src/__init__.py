"""Spherical Forms: equivariant models of spherical homogeneous spaces"""
