"""Exact combinatorics of veering triangulations.

Pipeline: parse a triangulation (native VTG text or taut isomorphism
signature), infer veers, then derive the dual graph, flow graph, homology,
veering polynomial, cones, restricted polynomials, growth rates, and bounded
dynamic-plane patches.  All core arithmetic is exact (integers, rationals).
"""

from .ingest import (
    RawTriangulation,
    VeeringTriangulation,
    infer_veers,
    parse_native,
    parse_taut_isosig,
    encode_taut_isosig,
    serialize_native,
    validate_veering,
    load,
)

__version__ = "0.1.0"

__all__ = [
    "RawTriangulation",
    "VeeringTriangulation",
    "infer_veers",
    "parse_native",
    "parse_taut_isosig",
    "encode_taut_isosig",
    "serialize_native",
    "validate_veering",
    "load",
]
