from fractions import Fraction
from typing import Union

import numpy as np
import numpy.typing as npt

JSON = Union[str, int, float, bool, None, dict[str, "JSON"], list["JSON"]]

IntArray = npt.NDArray[np.int64]
FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]
ComplexArray = npt.NDArray[np.complex128]

Rational = Union[int, Fraction]
RealLike = Union[int, float, Fraction, str]
Point = tuple[float, float]
Vertex = tuple[RealLike, RealLike]
FactorList = tuple[tuple[int, int], ...]
Pair = tuple[int, int]
