"""Property-based checks over random small configurations."""
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from hetcache import analysis as an
from hetcache.channel import verify_plan
from hetcache.converse import profile_minimum
from hetcache.core import SystemConfig
from hetcache.delivery import beta_set, census
from hetcache.errors import ConfigError
from hetcache.schemes import build_plan
from oracles import delay_cacheless, delay_two_groups

SLOW = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def configs(draw, K1_max=6, K2_max=5, L_max=4, cached_group2=None):
    K1 = draw(st.integers(2, K1_max))
    t1 = draw(st.integers(1, K1 - 1))
    K2 = draw(st.integers(0, K2_max))
    g1 = Fraction(t1, K1)
    options = [Fraction(0)] + [Fraction(t, K2) for t in range(1, K2) if Fraction(t, K2) < g1]
    if cached_group2 is True:
        options = options[1:]
    elif cached_group2 is False:
        options = options[:1]
    assume(options)
    g2 = draw(st.sampled_from(options))
    return SystemConfig(K1, g1, K2, g2, draw(st.integers(1, L_max)))


def buildable(cfg, limit=3000):
    try:
        plan = build_plan(cfg)
    except ConfigError:
        assume(False)
    assume(plan.slot_count() <= limit)
    return plan


@SLOW
@given(configs())
def test_measured_delay_matches_closed_form(cfg):
    plan = buildable(cfg)
    expected = (delay_cacheless(cfg.K1, cfg.gamma1, cfg.K2, cfg.L) if cfg.gamma2 == 0
                else delay_two_groups(cfg.K1, cfg.gamma1, cfg.K2, cfg.gamma2, cfg.L))
    assert plan.measured_delay == expected


@SLOW
@given(configs(), st.randoms(use_true_random=False))
def test_every_user_decodes_its_file(cfg, rnd):
    plan = buildable(cfg, limit=600)
    files = list(range(1, cfg.N + 1))
    rnd.shuffle(files)
    demands = dict(zip(plan.placement.users(), files))
    plan = build_plan(cfg, demands)
    assert census(plan).complete
    report = verify_plan(plan, seed=rnd.randrange(1000))
    assert report.success, report.to_dict()


@given(configs(K1_max=12, K2_max=12, L_max=6, cached_group2=False))
def test_gap_within_limit(cfg):
    g = an.gap_ratio(cfg.K1, cfg.gamma1, cfg.K2, cfg.L)
    assert g <= an.gap_limit(cfg.K1, cfg.gamma1, cfg.K2, cfg.L)


@given(configs(K1_max=12, K2_max=12, L_max=6, cached_group2=False))
def test_below_threshold_equals_equal_cache_system(cfg):
    if not an.large_regime(cfg.K1, cfg.gamma1, cfg.K2, cfg.L) or cfg.K2 == (cfg.L - 1) * cfg.T1:
        assert an.delay_zero_cache_group(cfg.K1, cfg.gamma1, cfg.K2, cfg.L) == an.equivalent_delay(
            cfg.K1, cfg.gamma1, cfg.K2, 0, cfg.L)


@given(st.integers(2, 12), st.integers(1, 6), st.integers(0, 6), st.data())
def test_regimes_agree_at_threshold(K1, L, t2, data):
    """On the regime boundary both closed forms give T, so the delay is continuous there."""
    t1 = data.draw(st.integers(1, K1 - 1))
    a1 = K1 - t1
    T = Fraction(a1, 1 + t1)
    K2 = (L - 1) * T
    assert (K2 + a1) / (t1 + L) == T
    assert an.delay_zero_cache_group(K1, Fraction(t1, K1), K2, L) == T
    a2 = (L - 1 + t2) * T
    assert (a1 + a2) / (L + t1 + t2) == T


@given(st.integers(4, 9), st.data())
def test_boost_is_linear_in_antennas(K1, data):
    # a > t + 1 keeps K2 = (L~ - 1)T at or above L~; L~ - 1 is a multiple of T's denominator
    t = data.draw(st.integers(1, (K1 - 2) // 2))
    g = Fraction(t, K1)
    T = an.single_stream_delay(K1, g)
    L_tilde = 1 + T.denominator * data.draw(st.integers(1, 3))
    K2 = (L_tilde - 1) * T
    assert K2.denominator == 1 and K2 >= L_tilde
    for L in range(1, L_tilde + 1):
        assert an.delay_single_antenna(K1, g, int(K2)) / an.delay_zero_cache_group(K1, g, int(K2), L) == L


@given(st.integers(1, 8), st.data())
def test_profile_minimum_is_single_stream_delay(K1, data):
    num = data.draw(st.integers(1, 4 * K1 - 1))
    g = Fraction(num, 4 * K1)
    K2 = data.draw(st.integers(0, 3))
    N = K1 + K2
    assert profile_minimum(K1, g, K2, N)[0] == an.delay_single_antenna(K1, g, K2)


@given(st.integers(0, 6), st.data())
def test_envelope_is_convex(K, data):
    K = K + 2
    a, b = sorted(data.draw(st.lists(st.integers(0, 4 * K - 1), min_size=2, max_size=2, unique=True)))
    ga, gb = Fraction(a, 4 * K), Fraction(b, 4 * K)
    mid = (ga + gb) / 2
    f = an.single_stream_delay
    assert f(K, mid) <= (f(K, ga) + f(K, gb)) / 2


@given(st.lists(st.integers(1, 20), min_size=2, max_size=8, unique=True), st.data())
def test_beta_set_properties(ground, data):
    ground = sorted(ground)
    tau = tuple(data.draw(st.lists(st.sampled_from(ground), max_size=len(ground) - 2, unique=True)))
    free = [u for u in ground if u not in tau]
    s = data.draw(st.sampled_from(free))
    size = data.draw(st.integers(0, len(free) - 1))
    beta = beta_set(ground, tau, s, size)
    assert len(set(beta)) == size and s not in beta and not set(beta) & set(tau)
    if size:
        i = free.index(s)
        assert beta[0] == free[(i + 1) % len(free)]
