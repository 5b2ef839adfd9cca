"""Coded caching with cache-aided and cache-less users over a multi-antenna broadcast channel.

Builds placements and delivery schedules, checks them against the closed-form delays,
and verifies decodability over an exact finite-field channel model.
"""
from .analysis import (delay_single_antenna, delay_zero_cache_group, delay_two_cache_groups, dof, equivalent_delay, formula_delay,
                       gap_ratio, homogeneous_delay, homogeneous_equivalent, lower_bound, optimal_stream_allocation)
from .channel import (DEFAULT_PRIME, ChannelMatrix, CoefficientLedger, DecodeReport, Precoder, decode_user,
                      gen_channel, receive, verify_plan, zf_precoder)
from .converse import converse_counting_oracle, converse_xi_bound, profile_minimum
from .core import SubfileId, SystemConfig, Transmission, TransmissionPlan, enumerate_subsets, t_k
from .placement import PlacementResult, place_cacheless, place_homogeneous, place_twotype
from .schemes import build_plan

__version__ = "0.1.0"
