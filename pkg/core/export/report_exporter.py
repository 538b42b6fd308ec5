import os
import logging
from typing import Any, Dict, List, Optional, Sequence

from core.poset import HasseGraph
from core.utils import ensure_dir_exists, expr_str, json_dumps, sanitize_filename, versioned
from config.settings import Settings

logger = logging.getLogger(__name__)


class ReportExporter:
    """Render computed artifacts as DOT, JSON or TSV and optionally write them to disk"""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = output_dir or Settings.OUTPUT_DIR

    def render_json(self, payload: Dict[str, Any]) -> str:
        return json_dumps(versioned(payload, Settings.SCHEMA_VERSION)) + "\n"

    def render_dot(self, hasse: HasseGraph) -> str:
        """Hasse diagram of Y as a digraph, one rank per codimension, red edges new in Y"""
        ctx = hasse.ctx
        name = sanitize_filename(f"{ctx.label}_hasse").replace("-", "_").replace(".", "_")
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=box];"]
        graph = hasse.to_networkx()
        by_codim: Dict[int, List[str]] = {}
        for node, codim in graph.nodes(data="codim"):
            by_codim.setdefault(codim, []).append(node)
        for codim in sorted(by_codim):
            nodes = " ".join(f'"{node}";' for node in by_codim[codim])
            lines.append(f"  {{ rank = same; {nodes} }}")
        for node, codim in graph.nodes(data="codim"):
            lines.append(f'  "{node}" [label="{node}\\ncodim {codim}"];')
        # one parallel edge per unit of the Chevalley coefficient
        for src, dst, new_in_Y in graph.edges(data="new_in_Y"):
            attributes = " [color=red]" if new_in_Y else ""
            lines.append(f'  "{src}" -> "{dst}"{attributes};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def render_tsv(self, rows: Sequence[Sequence[Any]], row_labels: Sequence[str],
                   column_labels: Sequence[str], corner: str = "") -> str:
        """Matrix as TSV: a header of column labels, then one labelled row per entry row"""
        if len(rows) != len(row_labels):
            raise ValueError(f"Got {len(rows)} rows but {len(row_labels)} row labels")
        lines = ["\t".join([corner, *column_labels])]
        for label, row in zip(row_labels, rows):
            if len(row) != len(column_labels):
                raise ValueError(f"Row {label} has {len(row)} entries, expected {len(column_labels)}")
            lines.append("\t".join([label, *(expr_str(v) for v in row)]))
        return "\n".join(lines) + "\n"

    def write(self, content: str, filename: str) -> str:
        """Write content under output_dir (absolute paths are used as given)"""
        filepath = filename if os.path.isabs(filename) else os.path.join(self.output_dir, filename)
        directory = os.path.dirname(filepath)
        if directory and not ensure_dir_exists(directory):
            raise OSError(f"Cannot create output directory {directory}")
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                f.write(content)
        except OSError as e:
            logger.error(f"Failed to write {filepath}: {str(e)}")
            raise
        logger.info(f"Successfully exported {filepath}")
        return filepath
