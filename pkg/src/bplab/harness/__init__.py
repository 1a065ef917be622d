"""Instance generators, closed-form bounds, bound verification and pipelines."""
