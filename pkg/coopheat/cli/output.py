"""
Gravação das tabelas em CSV (metadados com '#') ou JSON
"""

import io
import json
import logging
import math
import sys
from typing import Any, Dict, List, TextIO

from .. import __version__
from ..core.base import RunConfig, SweepTable


logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def _jsonable(value: Any) -> Any:
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def _metadata(table: SweepTable) -> Dict[str, Any]:
    return {"tool": "coopheat", "version": __version__, **table.metadata}


def render_csv(table: SweepTable) -> str:
    """
    CSV com uma linha '# chave: valor' por metadado e cabeçalho de colunas

    Args:
        table: tabela de resultados

    Returns:
        Texto CSV
    """
    buffer = io.StringIO()
    for key, value in sorted(_metadata(table).items()):
        buffer.write(f"# {key}: {json.dumps(value, sort_keys=True, default=str)}\n")
    if table.failures:
        buffer.write(f"# failures: {json.dumps(table.failures)}\n")
    table.frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def render_json(table: SweepTable) -> str:
    rows: List[Dict[str, Any]] = [
        {column: _jsonable(value) for column, value in record.items()}
        for record in table.frame.to_dict(orient="records")
    ]
    document = {
        "metadata": _metadata(table),
        "columns": table.columns,
        "rows": rows,
        "passed": table.passed,
        "failures": table.failures,
    }
    return json.dumps(document, indent=2, sort_keys=True, default=str) + "\n"


def write_table(table: SweepTable, config: RunConfig, stream: TextIO = None) -> None:
    """
    Grava a tabela no arquivo de saída ou em stdout

    Args:
        table: tabela
        config: RunConfig (output e output_format)
        stream: destino alternativo
    """
    text = render_json(table) if config.output_format == "json" else render_csv(table)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"Tabela gravada em {config.output}")
    else:
        (stream or sys.stdout).write(text)
