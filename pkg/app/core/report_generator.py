from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import markdown2
from jinja2 import Environment, FileSystemLoader, select_autoescape

from app.models.partition import VerifyReport

_TEMPLATE_DIR = Path(__file__).parent.parent / "templates"


def _get_jinja_env() -> Environment:
    return Environment(
        loader=FileSystemLoader(str(_TEMPLATE_DIR)),
        autoescape=select_autoescape(disabled_extensions=("j2",)),
        trim_blocks=True,
        lstrip_blocks=True,
    )


def render_report(report: VerifyReport, generated_at: Optional[str] = None, timings: bool = True) -> str:
    """Markdown report. With timings=False the text depends only on the checked range."""
    env = _get_jinja_env()
    template = env.get_template("verify_report.md.j2")
    return template.render(
        report=report,
        failure=report.first_failure,
        timings=timings,
        generated_at=generated_at or datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M UTC"),
    )


def generate_report(report: VerifyReport, report_path: Path) -> None:
    report_path.write_text(render_report(report), encoding="utf-8")


def to_html(markdown_text: str) -> str:
    return markdown2.markdown(markdown_text, extras=["tables"])
