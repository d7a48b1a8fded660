"""Arithmetic matroids, independence posets of finite abelian group
structures and their Stanley-Reisner rings.
"""
