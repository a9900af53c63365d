import numpy as np
import pytest

from kloos.core import KloostermanQuery, Method, PreconditionError, get_backend, kloosterman_sum
from kloos.core.backends import BACKENDS, CrtBackend, DftBackend, DirectBackend
from kloos.core.kloosterman import kloosterman_direct, tolerance


@pytest.mark.parametrize(
    "name,backend_class",
    [
        ("direct", DirectBackend),
        ("crt-split", CrtBackend),
        ("crt", CrtBackend),
        ("FAST", CrtBackend),
        ("dft", DftBackend),
    ],
)
# skipcq: PY-D0003
def test_get_backend(name: str, backend_class: type):
    assert isinstance(get_backend(name), backend_class)


# skipcq: PY-D0003
def test_get_backend_from_method():
    assert isinstance(get_backend(Method.DFT), DftBackend)
    assert repr(get_backend(Method.CRT_SPLIT)) == "<CrtBackend(method=crt-split)>"


# skipcq: PY-D0003
def test_get_backend_unknown():
    with pytest.raises(PreconditionError):
        get_backend("fft")


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("m,n,c", [(1, 1, 1), (3, -2, 20), (0, 5, 36), (-11, 7, 77), (4, 4, 128)])
# skipcq: PY-D0003
def test_backends_agree(name: str, m: int, n: int, c: int):
    q = KloostermanQuery(m, n, c)
    value = kloosterman_sum(q, name)
    assert value.value == pytest.approx(kloosterman_direct(q).value, abs=tolerance(c))
    assert value.query == q


@pytest.mark.parametrize("name", ["direct", "crt", "dft"])
# skipcq: PY-D0003
def test_modular_sums_agree(name: str):
    ms = np.array([-3, 0, 1, 2, 9, 40])
    ns = np.array([1, 1, -1, 5, 0, 7])
    values = get_backend(name).modular_sums(30, ms, ns)
    expected = [kloosterman_direct(KloostermanQuery(int(m), int(n), 30)).value for m, n in zip(ms, ns)]
    assert values == pytest.approx(expected, abs=tolerance(30))


# skipcq: PY-D0003
def test_dft_spectrum():
    spectrum = DftBackend().spectrum(12, 5)
    assert len(spectrum) == 12
    for m in range(12):
        expected = kloosterman_direct(KloostermanQuery(m, 5, 12)).value
        assert spectrum[m] == pytest.approx(expected, abs=tolerance(12))


# skipcq: PY-D0003
def test_direct_backend_calls_shared_table(mocker):
    spy = mocker.patch("kloos.core.backends.modular_sums", return_value=np.zeros(2))
    DirectBackend().modular_sums(7, np.array([1, 2]), np.array([1, 1]))
    spy.assert_called_once()
