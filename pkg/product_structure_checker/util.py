import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Generator, Optional, Union

from .errors import InputError


def dumps(document: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise InputError(
            f"Malformed JSON in {source} at line {ex.lineno}, column {ex.colno}: {ex.msg}"
        ) from ex


def load_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as ex:
        raise InputError(f"Cannot read {path}: {ex.strerror}") from ex
    return loads(text, str(path))


def write_json(document: Any, path: Optional[Union[str, Path]] = None) -> str:
    text = dumps(document)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


@contextmanager
def decoding(what: str) -> Generator[None, None, None]:
    """Turn structural lookup failures inside the block into an `InputError`."""
    try:
        yield
    except (KeyError, TypeError, ValueError, AttributeError) as ex:
        raise InputError(f"Malformed {what}: {ex!r}") from ex
