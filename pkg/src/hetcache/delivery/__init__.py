from .cacheless import schedule_cacheless, schedule_cacheless_general
from .census import DeliveryCensus, census
from .common import PhiAllocator, beta_set, resolve_demands
from .homogeneous import schedule_homogeneous
from .matching import (MatchingInstance, build_matching, is_valid_matching, matching_instance,
                       verify_perfect_matching)
from .twotype import (StreamSplit, schedule_twotype, schedule_twotype_fractional, schedule_twotype_residual,
                      solve_stream_split, split_streams)

__all__ = [
    "DeliveryCensus", "MatchingInstance", "PhiAllocator", "StreamSplit", "beta_set", "build_matching",
    "census", "is_valid_matching", "matching_instance", "resolve_demands", "schedule_cacheless",
    "schedule_cacheless_general", "schedule_homogeneous", "schedule_twotype", "schedule_twotype_fractional",
    "schedule_twotype_residual", "solve_stream_split", "split_streams", "verify_perfect_matching",
]
