import logging
import os
import platform
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
import scipy
from pydantic import BaseModel, ValidationError

from ConfoundSens.__version__ import __version__
from ConfoundSens.core.const.json import dump_json, load_json
from ConfoundSens.core.errors import InputFileError, InvalidParameterError
from ConfoundSens.mcmc import Dataset
from ConfoundSens.model import Contrast

log = logging.getLogger('ConfoundSens.IO')


# ----------------------------------------------------------------------------------------------------------------------
# Reading
# ----------------------------------------------------------------------------------------------------------------------
def read_csv(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, sep=',', decimal='.', encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError.from_path(path, str(e)) from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InputFileError.from_path(path, f'malformed csv ({e})') from None

    if frame.empty:
        raise InputFileError.from_path(path, 'file contains no rows')
    log.debug(f'Read {frame.shape[0]} rows with {frame.shape[1]} columns from {path}')
    return frame


def read_json(path: Path) -> Any:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError.from_path(path, str(e)) from None
    try:
        return load_json(text)
    except ValueError as e:
        raise InvalidParameterError(f'"{path}" is not valid json: {e}') from None


def check_numeric(frame: pd.DataFrame, path: Path):
    """Raise if a column holds text or missing or non-finite values"""
    text = [str(c) for c in frame.columns if not pd.api.types.is_numeric_dtype(frame[c])]
    if text:
        raise InputFileError.from_path(path, f'non numeric values in column(s) {", ".join(text)}')

    missing = [str(c) for c in frame.columns if not np.isfinite(frame[c].to_numpy(dtype=float)).all()]
    if missing:
        raise InputFileError.from_path(path, f'missing or non-finite values in column(s) {", ".join(missing)}')


def load_dataset(path: Path, outcome_col: Optional[str], standardize: bool = False) -> Dataset:
    """Dataset from a csv file. Without ``outcome_col`` every column is a treatment and the outcome is zero."""
    frame = read_csv(path)
    check_numeric(frame, path)
    if outcome_col is None:
        frame = frame.assign(**{'__outcome__': 0.0})
        outcome_col = '__outcome__'
    ds = Dataset.from_frame(frame, outcome_col)
    if standardize:
        ds = Dataset.from_arrays(ds.treatments.centered(standardize=True), ds.outcome, ds.treatments.names)
    return ds


# ----------------------------------------------------------------------------------------------------------------------
# Contrast specifications
# ----------------------------------------------------------------------------------------------------------------------
class PairSpec(BaseModel):
    t1: List[float]
    t2: List[float]
    name: str = ''


class ShorthandSpec(BaseModel):
    treatment: Union[int, str]
    delta: float = 1.0
    name: Optional[str] = None


def _treatment_index(value: Union[int, str], names: Sequence[str]) -> int:
    if isinstance(value, str):
        try:
            return list(names).index(value)
        except ValueError:
            raise InvalidParameterError(f'Unknown treatment "{value}", available: {", ".join(names)}') from None
    if not 0 <= value < len(names):
        raise InvalidParameterError.out_of_range('treatment', value, 0, len(names) - 1)
    return value


def parse_contrasts(obj: Any, names: Sequence[str]) -> List[Contrast]:
    """Contrasts from a parsed json document.

    The document is a list (or an object with the key ``contrasts``) of entries which are either explicit
    ``{"t1": [...], "t2": [...]}`` pairs or ``{"treatment": i, "delta": x}`` where ``i`` is the zero based
    index or the column name of the treatment.
    """
    if isinstance(obj, dict):
        obj = obj.get('contrasts', [obj])
    if not isinstance(obj, list) or not obj:
        raise InvalidParameterError('Contrast specification must be a non empty list')

    k = len(names)
    out = []
    try:
        for i, entry in enumerate(obj):
            if not isinstance(entry, dict):
                raise InvalidParameterError(f'Contrast entry {i} must be an object, got {entry!r}')
            if 'treatment' in entry:
                spec = ShorthandSpec(**entry)
                idx = _treatment_index(spec.treatment, names)
                name = spec.name if spec.name is not None else \
                    (names[idx] if spec.delta == 1 else f'{names[idx]}={spec.delta:g}')
                out.append(Contrast.coordinate(k, idx, spec.delta, name))
            else:
                pair = PairSpec(**entry)
                out.append(Contrast(pair.t1, pair.t2, pair.name or f'contrast_{i + 1}'))
    except ValidationError as e:
        raise InvalidParameterError(f'Invalid contrast specification: {e}') from None
    return out


def load_contrasts(path: Path, names: Sequence[str]) -> List[Contrast]:
    return parse_contrasts(read_json(path), names)


def coordinate_indices(contrasts: Sequence[Contrast]) -> List[int]:
    """Treatment indices of contrasts that change exactly one treatment"""
    out = []
    for c in contrasts:
        nz = np.flatnonzero(c.delta)
        if nz.size != 1:
            raise InvalidParameterError(f'Contrast "{c.name}" must change exactly one treatment')
        out.append(int(nz[0]))
    return out


# ----------------------------------------------------------------------------------------------------------------------
# Writing
# ----------------------------------------------------------------------------------------------------------------------
def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        # json has no representation for nan and inf
        return float(obj) if np.isfinite(obj) else None
    return obj


def _write_atomic(path: Path, write: Callable[[Path], None]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f'.{path.name}.', dir=path.parent)
    os.close(fd)
    try:
        write(Path(tmp))
        os.replace(tmp, path)
    except OSError as e:
        raise InputFileError(f'Can not write "{path}": {e}') from None
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)
    log.debug(f'Wrote {path}')
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    return _write_atomic(path, lambda p: frame.to_csv(p, index=False, encoding='utf-8'))


def write_json(obj: Any, path: Path) -> Path:
    text = dump_json(to_jsonable(obj), indent=2)

    def _write(p: Path):
        with p.open('w', encoding='utf-8') as file:
            file.write(text)
            file.write('\n')
    return _write_atomic(path, _write)


def versions() -> Dict[str, str]:
    return {
        'ConfoundSens': __version__, 'python': platform.python_version(),
        'numpy': np.__version__, 'scipy': scipy.__version__, 'pandas': pd.__version__,
    }


def write_metadata(out_dir: Path, command: str, cfg: BaseModel, seeds: Dict[str, Any],
                   extra: Optional[Dict[str, Any]] = None) -> Path:
    """Configuration, library versions and seeds of a command run. Contains nothing time dependent."""
    meta = {'command': command, 'config': cfg, 'versions': versions(), 'seeds': seeds, **(extra or {})}
    return write_json(meta, Path(out_dir) / f'{command}_metadata.json')
