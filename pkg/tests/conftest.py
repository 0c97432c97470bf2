import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ogschubert.partitions import TypedPartition, enumerate_typed

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def typed_partitions(draw, ks=(1, 2, 3), max_size=6) -> TypedPartition:
    k = draw(st.sampled_from(ks))
    return draw(st.sampled_from(enumerate_typed(k, max_size=max_size)))


@st.composite
def k_strict_tuples(draw, k=None, max_part=7, max_len=5):
    k = draw(st.integers(0, 3)) if k is None else k
    parts = draw(st.lists(st.integers(1, max_part), max_size=max_len))
    parts.sort(reverse=True)
    out = []
    for p in parts:
        if p > k and out and out[-1] == p:
            continue
        out.append(p)
    return k, tuple(out)
