"""Hypothesis strategies for Z/r-sets."""
from hypothesis import strategies as st

from lambda_orders.corpus import mset_corpus
from lambda_orders.mset import coproduct, lift, product

BASE = mset_corpus(max_size=4, max_level=6)


@st.composite
def msets(draw, max_size=8):
    S = draw(st.sampled_from(BASE))
    op = draw(st.sampled_from(["none", "coproduct", "product", "lift"]))
    if op == "lift":
        k = draw(st.integers(1, 3))
        if S.level * k <= 12:
            S = lift(S, S.level * k)
    elif op != "none":
        T = draw(st.sampled_from(BASE))
        U = (coproduct if op == "coproduct" else product)(S, T)
        if U.size <= max_size and U.level <= 12:
            S = U
    return S
