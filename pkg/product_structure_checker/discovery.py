"""Finding the property sections under `checks` and narrowing them to a selection.

A selection is a list of `section` or `section.Check` strings, where `section` is the
module name inside `checks` and `Check` a class registered in that section.
"""
import inspect
import logging
from collections import defaultdict
from importlib import import_module
from pkgutil import iter_modules
from types import ModuleType
from typing import DefaultDict, Iterable, Iterator, Mapping, Optional, Type

from .core import Section
from .errors import InputError, InternalConsistencyError

Selection = Mapping[str, list[str]]


def find_section_class(module: ModuleType) -> Type[Section]:
    """The single `Section` subclass defined in a checks module."""
    found = [
        member
        for _, member in inspect.getmembers(module, inspect.isclass)
        if issubclass(member, Section)
        and member is not Section
        and member.__module__ == module.__name__
    ]
    if len(found) != 1:
        raise InternalConsistencyError(
            f"Module {module.__name__} defines {len(found)} sections, expected one"
        )
    return found[0]


def parse_selection(selectors: Optional[Iterable[str]]) -> Selection:
    """Group selectors by section.

    Example:
        Input: ['engine', 'layouts.CliqueQueues', 'layouts.ShallowQueues']
        Output: {'engine': [], 'layouts': ['CliqueQueues', 'ShallowQueues']}
    """
    result: DefaultDict[str, list[str]] = defaultdict(list)
    for selector in selectors or ():
        parts = selector.split(".")
        if len(parts) > 2 or not all(parts):
            raise InputError(f'Check "{selector}" is not of the form section[.Check]')
        checks = result[parts[0]]
        if len(parts) == 2 and parts[1] not in checks:
            checks.append(parts[1])
    return dict(result)


def iter_section_modules(package: ModuleType) -> Iterator[tuple[str, Type[Section]]]:
    for _, modname, ispkg in iter_modules(package.__path__):
        if ispkg:
            continue
        module = import_module(f"{package.__package__}.{modname}")
        yield modname, find_section_class(module)


def _narrowed(section: Type[Section], wanted: list[str]) -> Type[Section]:
    """A subclass of `section` that runs only the wanted checks, in registration order."""
    known = {check.__name__ for check in section.checks}
    unknown = [name for name in wanted if name not in known]
    if unknown:
        raise InputError(
            f"Section {section.__module__} has no check {', '.join(unknown)}; "
            f"known: {', '.join(sorted(known))}"
        )
    narrowed = type(section.__name__, (section,), {"__module__": section.__module__})
    narrowed.checks = [check for check in section.checks if check.__name__ in wanted]
    return narrowed


def discover_sections(
    package: ModuleType,
    selectors: Optional[Iterable[str]] = None,
) -> list[Type[Section]]:
    """Sections of `package` in module order, limited to the selection when one is given."""
    selection = parse_selection(selectors)
    sections = []
    found = set()
    for modname, section in iter_section_modules(package):
        found.add(modname)
        if selection and modname not in selection:
            continue
        if selection.get(modname):
            section = _narrowed(section, selection[modname])
        logging.debug(f"Discovered section {section.name} with {len(section.checks)} checks")
        sections.append(section)
    missing = sorted(set(selection) - found)
    if missing:
        raise InputError(f"Unknown section {', '.join(missing)}; known: {', '.join(sorted(found))}")
    return sections


def list_checks(package: ModuleType) -> list[str]:
    """Every selectable `section.Check` of `package`."""
    return [
        f"{modname}.{check.__name__}"
        for modname, section in iter_section_modules(package)
        for check in section.checks
    ]
