"""Combinatorial invariants of symmetric Heegaard diagrams for double branched covers.

The pipeline takes a braid word whose closure is a knot, builds the doubled
Bennequin-surface diagram with its sheet-swapping involution, enumerates the
symmetric intersection points, partitions them by first-homology obstruction
classes, and assembles signed counts per class together with an independent
index/grading cross-check.
"""

__all__ = [
    "BraidWord",
    "ChiReport",
    "Generator",
    "HomologyPresentation",
    "RealDiagram",
    "Region",
    "SpinCPartition",
    "build_real_diagram",
    "chi_report",
    "compute_regions",
    "enumerate_generators",
    "epsilon_class",
    "generator_count",
    "generator_sign",
    "h1_presentation",
    "knot_determinant",
    "markov_variants",
    "parse_braid",
    "partition_by_spinc",
    "smith_normal_form",
    "validate_diagram",
]


def __getattr__(name):
    # modules are imported lazily so the CLI starts fast
    from importlib import import_module

    for mod in (
        "braid",
        "builder",
        "diagram",
        "domains",
        "generators",
        "homology",
        "signs",
        "snf",
        "spinc",
    ):
        try:
            module = import_module(f"realhf.{mod}")
        except ImportError:
            continue
        if hasattr(module, name):
            return getattr(module, name)
    raise AttributeError(name)
