"""
Markdown Summary Template.

This module renders the human-readable run summary (summary.md) written
next to the CSV and JSON outputs of every command.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 13:48:20
"""

from typing import Any, Dict, List

from jinja2 import Template


class MarkdownTemplate:
    """
    Markdown template for run summaries.

    Report data holds a title, a timestamp, a list of (name, value)
    settings, and sections. A section has a title, optional bullet lines,
    and an optional table given as a header list and a list of rows.
    """

    def __init__(self):
        """Initialize the Markdown template."""
        self.base_template = self._get_base_template()

    def render(self, report_data: Dict[str, Any]) -> str:
        """
        Render the report data into Markdown format.

        Args:
            report_data (Dict[str, Any]): The report data to render

        Returns:
            str: Rendered Markdown content
        """
        template = Template(self.base_template, trim_blocks=True, lstrip_blocks=True)
        return template.render(report=report_data, fmt=self.format_cell)

    @staticmethod
    def format_cell(value: Any) -> str:
        """Compact text for a table cell."""
        if value is None:
            return '-'
        if isinstance(value, float):
            return 'nan' if value != value else f'{value:.4g}'
        return str(value)

    @staticmethod
    def table(header: List[str], rows: List[List[Any]]) -> Dict[str, Any]:
        """Table section payload."""
        return {'header': list(header), 'rows': [list(row) for row in rows]}

    def _get_base_template(self) -> str:
        return """# {{ report.title }}

> Generated: {{ report.timestamp }}
> Package version: {{ report.version }}

## Settings

{% for name, value in report.settings %}
- **{{ name }}**: {{ value }}
{% endfor %}
{% for section in report.sections %}

## {{ section.title }}

{% for line in section.get('lines', []) %}
- {{ line }}
{% endfor %}
{% if section.get('table') %}
{% if section.get('lines') %}

{% endif %}
| {{ section.table.header | join(' | ') }} |
|{% for _ in section.table.header %} --- |{% endfor %}

{% for row in section.table.rows %}
| {% for cell in row %}{{ fmt(cell) }}{% if not loop.last %} | {% endif %}{% endfor %} |
{% endfor %}
{% endif %}
{% endfor %}
"""
