from hypothesis import strategies as st

from umx import gen


@st.composite
def spaces(draw, min_points=1, max_points=10):
    n = draw(st.integers(min_points, max_points))
    seed = draw(st.integers(0, 2**63 - 1))
    branching = draw(st.integers(2, 4))
    return gen.random_space(gen.GenConfig(n_points=n, seed=seed, branching=branching))


seeds = st.integers(0, 2**63 - 1)
