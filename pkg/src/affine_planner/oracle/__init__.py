"""Exact ground truth for affine-tree worlds and the seeded property suites."""

from .suite import SuiteConfig, report_json, run_property_suite
from .vertices import (
    VertexSet,
    counterexample_vertex,
    delta_vertices,
    eu_range,
    in_world,
    member,
    sampled_action_image,
    subsumes_exact,
    subsumes_vertices,
    world_vertices,
)

__all__ = [
    "SuiteConfig",
    "VertexSet",
    "counterexample_vertex",
    "delta_vertices",
    "eu_range",
    "in_world",
    "member",
    "report_json",
    "run_property_suite",
    "sampled_action_image",
    "subsumes_exact",
    "subsumes_vertices",
    "world_vertices",
]
