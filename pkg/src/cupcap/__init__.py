"""Exact cups, caps and convex polygons for the Erdos-Szekeres problem."""
