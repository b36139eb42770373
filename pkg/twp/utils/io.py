import json
import os
from typing import Any, Optional, Tuple

import numpy as np

from twp import logger
from twp.dyadic.whitney import OpenSet
from twp.errors import InstanceFormatError
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams


def _to_builtin(obj: Any):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, 'to_dict'):
        return obj.to_dict()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON "
                    f"serializable")


def save_json(obj: Any, filename: str) -> str:
    """Save :obj:`obj` as JSON, creating the parent directory if needed.

    Numpy scalars and arrays and objects exposing :meth:`to_dict` are
    converted on the fly.

    Returns:
        path (string): The absolute path to the saved file.
    """
    abspath = os.path.abspath(filename)
    os.makedirs(os.path.dirname(abspath), exist_ok=True)
    with open(abspath, 'w') as fp:
        json.dump(obj, fp, indent=2, default=_to_builtin)
    logger.info(f"Saved {abspath}")
    return abspath


def load_json(filename: str) -> Any:
    """Load a JSON file.

    Raises:
        InstanceFormatError: If the file is not valid JSON.
    """
    with open(filename, 'r') as fp:
        try:
            return json.load(fp)
        except json.JSONDecodeError as err:
            raise InstanceFormatError(f"{filename}: invalid JSON ({err}).")


def load_instance(filename: str, params: Optional[KernelParams] = None) \
        -> Tuple[DiscreteMeasure, UpperHalfMeasure]:
    """Load the pair :math:`(\\sigma, \\mu)` from a measure file
    :obj:`{"sigma": [...], "mu": [...]}`. If :obj:`params` is given, atoms
    must lie within the ends, :math:`s \\leq S`.

    Raises:
        InstanceFormatError: If the file is malformed. The message names the
            file, the measure, the atom index and the field.
    """
    data = load_json(filename)
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{filename}: expected an object with keys "
                                  f"'sigma' and 'mu'.")
    try:
        sigma = DiscreteMeasure.from_records(data.get('sigma', []), 'sigma')
        mu = UpperHalfMeasure.from_records(data.get('mu', []), 'mu')
    except InstanceFormatError as err:
        raise InstanceFormatError(f"{filename}: {err}")
    if params is not None:
        try:
            sigma.check_support(params)
            mu.check_support(params)
        except ValueError as err:
            raise InstanceFormatError(f"{filename}: {err}")
    logger.debug(f"Loaded {len(sigma)} sigma-atoms and {len(mu)} mu-atoms "
                 f"from {filename}.")
    return sigma, mu


def save_instance(sigma: DiscreteMeasure,
                  mu: UpperHalfMeasure,
                  filename: str,
                  params: Optional[KernelParams] = None,
                  seed: Optional[int] = None) -> str:
    data = dict(sigma=sigma.to_records(), mu=mu.to_records())
    if params is not None:
        data['params'] = params.to_dict()
    if seed is not None:
        data['seed'] = seed
    return save_json(data, filename)


def load_params(filename: str) -> KernelParams:
    """Load :class:`~twp.model.KernelParams` from
    :obj:`{"m": 4, "n": 3, "S": 8, "L": 6}`, or from the :obj:`params` entry
    of a measure file."""
    data = load_json(filename)
    if isinstance(data, dict) and isinstance(data.get('params'), dict):
        data = data['params']
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{filename}: parameters must be an "
                                  f"object.")
    try:
        return KernelParams.from_dict(data)
    except (TypeError, ValueError) as err:
        raise InstanceFormatError(f"{filename}: {err}")


def load_values(filename: str, size: int, key: str = 'psi') -> np.ndarray:
    """Load one value per atom from a JSON list or from the entry
    :obj:`key` of a JSON object.

    Raises:
        InstanceFormatError: If the values are not numbers or their count
            differs from :obj:`size`.
    """
    data = load_json(filename)
    if isinstance(data, dict):
        if key not in data:
            raise InstanceFormatError(f"{filename}: missing field '{key}'.")
        data = data[key]
    try:
        values = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as err:
        raise InstanceFormatError(f"{filename}: invalid '{key}' ({err}).")
    if values.shape != (size, ):
        raise InstanceFormatError(f"{filename}: '{key}' must hold {size} "
                                  f"values, got shape {values.shape}.")
    return values


def load_omega(filename: str, params: KernelParams) -> OpenSet:
    """Load an open set written as grid-aligned intervals per end,
    :obj:`{"big": [[0, 0.5], [0.75, 1]], "small": []}`."""
    data = load_json(filename)
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{filename}: expected intervals per end.")
    try:
        return OpenSet.from_intervals(params, data)
    except (TypeError, ValueError) as err:
        raise InstanceFormatError(f"{filename}: {err}")
