"""Quadratic Weyl group multiple Dirichlet series: exact p-part construction and checks."""
