"""Word document export of the reproduction table."""

from __future__ import annotations

import logging
from datetime import datetime
from pathlib import Path

import pandas as pd
from docx import Document
from docx.enum.text import WD_PARAGRAPH_ALIGNMENT
from docx.oxml import OxmlElement
from docx.oxml.ns import qn
from docx.shared import Inches, Pt, RGBColor

LOGGER = logging.getLogger(__name__)

HEADER_FILL = "E2EFD9"
STATUS_FILLS = {"fail": "F4CCCC", "budget": "FCE5CD", "discrepancy": "FFF2CC"}


class DocumentGenerator:
    """Generate the reproduction report as a Word document."""

    def __init__(self) -> None:
        LOGGER.debug("DocumentGenerator initialized")

    def create_reproduction_document(
        self,
        frame: pd.DataFrame,
        output_path: Path | str,
        title: str = "Mixing Calculus Reproduction Report",
    ) -> Path:
        """One grid table with a shaded header row; failing rows are tinted."""
        doc = Document()
        self._apply_styles(doc)
        for section in doc.sections:
            section.left_margin = Inches(0.75)
            section.right_margin = Inches(0.75)

        doc.core_properties.title = title
        doc.core_properties.comments = "Generated by chiralmix reproduce"

        heading = doc.add_paragraph()
        heading.alignment = WD_PARAGRAPH_ALIGNMENT.CENTER
        heading_run = heading.add_run(title)
        heading_run.font.size = Pt(16)
        heading_run.font.bold = True
        heading_run.font.color.rgb = RGBColor(0, 51, 102)

        passed = int(frame["status"].isin(["pass", "discrepancy"]).sum())
        summary = doc.add_paragraph()
        summary.alignment = WD_PARAGRAPH_ALIGNMENT.CENTER
        summary.add_run(f"{passed} of {len(frame)} quantities match").font.bold = True
        doc.add_paragraph(f"Generated on {datetime.utcnow().strftime('%d-%b-%Y %H:%M UTC')}")

        columns = list(frame.columns)
        table = doc.add_table(rows=1, cols=len(columns))
        table.style = "Table Grid"
        for cell, name in zip(table.rows[0].cells, columns):
            cell.text = name.capitalize()
            self._shade(cell, HEADER_FILL)
            for paragraph in cell.paragraphs:
                for run in paragraph.runs:
                    run.font.bold = True
                    run.font.size = Pt(10)

        for record in frame.itertuples(index=False):
            cells = table.add_row().cells
            for cell, value in zip(cells, record):
                run = cell.paragraphs[0].add_run(str(value))
                run.font.size = Pt(9)
            fill = STATUS_FILLS.get(record.status)
            if fill:
                for cell in cells:
                    self._shade(cell, fill)

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        doc.save(output_path)
        LOGGER.info("Reproduction document saved to %s", output_path)
        return output_path

    @staticmethod
    def _shade(cell, fill: str) -> None:
        shading = OxmlElement("w:shd")
        shading.set(qn("w:fill"), fill)
        cell._element.get_or_add_tcPr().append(shading)

    @staticmethod
    def _apply_styles(doc: Document) -> None:
        style = doc.styles["Normal"]
        font = style.font
        font.name = "Calibri"
        font.size = Pt(11)
        style.paragraph_format.space_after = Pt(6)
