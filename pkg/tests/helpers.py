import numpy as np
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

unit_floats = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
unit_complex = st.builds(complex, unit_floats, unit_floats)


def complex_matrices(max_rows=6, max_cols=6):
    shapes = hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=max(max_rows, max_cols))
    return shapes.filter(lambda s: s[0] <= max_rows and s[1] <= max_cols).flatmap(
        lambda s: hnp.arrays(np.complex128, s, elements=unit_complex)
    )


def complex_vectors(dim):
    return hnp.arrays(np.complex128, dim, elements=unit_complex)


def assert_close(actual, expected, atol=1e-12, rtol=0.0):
    np.testing.assert_allclose(np.asarray(actual), np.asarray(expected), atol=atol, rtol=rtol)


def rel_err(x, ref, floor=0.0):
    """||x - ref|| / max(||ref||, floor); a zero reference divides by 1."""
    x, ref = np.asarray(x), np.asarray(ref)
    scale = max(np.linalg.norm(ref), floor)
    return np.linalg.norm(x - ref) / (scale if scale > 0 else 1.0)


def parse_cli_output(text):
    """Split CLI output into ``{section: lines}`` and a summary dict."""
    sections, summary, current = {}, {}, None
    for line in text.splitlines():
        if line.startswith("# "):
            current = line[2:].strip()
            sections[current] = []
        elif current == "summary":
            key, _, val = line.partition(": ")
            summary[key] = val
        elif current is not None:
            sections[current].append(line)
    return sections, summary


def cli_vector(lines):
    return np.array([complex(float(r), float(i)) for r, i in (ln.split() for ln in lines)])
