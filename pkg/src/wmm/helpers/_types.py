from typing import Any, Union

import numpy as np
from typing_extensions import TypeAlias

BoolArray: TypeAlias = np.ndarray[Any, np.dtype[np.bool_]]

JSONConvertible: TypeAlias = Union[
    list["JSONConvertible"], dict[str, "JSONConvertible"], int, float, str, bool, None
]
