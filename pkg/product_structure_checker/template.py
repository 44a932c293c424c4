"""HTML rendering of suite reports."""
from typing import Any

from jinja2 import Environment, PackageLoader, select_autoescape


def id_sanitize(value: str) -> str:
    """Anchor id made of the alphanumeric characters of a name."""
    return "".join(filter(str.isalnum, value)).lower()


def verdict(result: bool) -> str:
    return "passed" if result else "failed"


def summarise(data: dict[str, Any]) -> dict[str, Any]:
    checks = [check for section in data.get("sections", []) for check in section["checks"]]
    return {
        "sections": len(data.get("sections", [])),
        "checks": len(checks),
        "failed": sum(not check["check"]["result"] for check in checks),
        "duration": round(sum(check.get("duration", 0.0) for check in checks), 3),
    }


def _environment() -> Environment:
    env = Environment(
        loader=PackageLoader(__package__, "templates"),
        autoescape=select_autoescape(["html", "jinja2"]),
        keep_trailing_newline=True,
    )
    env.filters["id_sanitize"] = id_sanitize
    env.filters["verdict"] = verdict
    return env


def template(data: dict[str, Any]) -> str:
    return (
        _environment()
        .get_template("report.html.jinja2")
        .render(report=data, summary=summarise(data))
    )
