"""Spatially coupled circulant-based LDPC code construction and optimization."""

from .code_model import (
    CirculantBlockCode,
    PartitionMatrix,
    SCCodeSpec,
    ab_code,
    ab_powers,
    component_protograph,
    lift_block,
    partition_from_cutting_vector,
    partition_from_cutting_vectors,
    sc_lift,
    sc_protograph,
    window,
)
from .overlaps import (
    IndependentOverlaps,
    OverlapSet,
    PatternCounts,
    complete_overlaps,
    independent_overlap_sets,
    overlaps_from_partition,
    partition_from_overlaps,
    pattern_counts,
    restrict_to_independent,
    validate_realizable,
    valid_overlap_sets,
)
from .cycle_census import (
    ActiveCensus,
    CycleCensus,
    active_cycles6,
    census_from_partition,
    census_protograph,
    count_cycles4,
    count_cycles6,
    count_lifted_cycles4,
    count_span,
    find_cycles4,
    find_cycles6,
)
from .partition_opt import Optimum, OptimizerConfig, enumerate_feasible, optimize
from .power_opt import CpoConfig, CpoState, init_ab_powers, refine_layout, \
    run_cpo, weighted_theta
from .trapping_sets import (
    InducedConfig,
    ObjectSpecies,
    classify,
    common_denominator,
    dominant_species,
    enumerate_objects,
    max_shortest_path_vns,
    replica_span,
)
from .io_formats import read_alist, read_int_grid, write_alist, write_int_grid

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
