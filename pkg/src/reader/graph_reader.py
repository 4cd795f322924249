import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Union

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.graph import GraphDocumentError
from src.graph.builder import validate_graph
from src.models.graph import MatrixWeightedGraph

logger = logging.getLogger(__name__)


class GraphReader:

    @staticmethod
    def _ensure_exists(file_name: Union[str, Path]) -> None:
        if not os.path.isfile(file_name):
            logger.error(f"File {file_name} does not exist")
            raise GraphDocumentError(f"cannot read {file_name}: no such file")

    @staticmethod
    def read_document(file_name: Union[str, Path]) -> Dict[str, Any]:
        """
        Parse a graph document without validating it.

        Raises:
            GraphDocumentError: the file is missing, unreadable, not JSON or not an object.
        """
        logger.debug(f"Accessing {os.path.abspath(file_name)}")
        GraphReader._ensure_exists(file_name)
        try:
            with open(file_name, encoding="utf-8", mode="r") as f:
                document = json.load(f)
        except json.JSONDecodeError as e:
            raise GraphDocumentError(f"{file_name} is not valid JSON: {e.msg} (line {e.lineno})") from e
        except UnicodeDecodeError as e:
            raise GraphDocumentError(f"{file_name} is not UTF-8 text: {e.reason} at byte {e.start}") from e
        except OSError as e:
            raise GraphDocumentError(f"cannot read {file_name}: {e}") from e
        if not isinstance(document, dict):
            raise GraphDocumentError(f"{file_name} must hold a JSON object")
        return document

    @staticmethod
    def read_graph(file_name: Union[str, Path], tol: Tolerances = DEFAULT_TOLERANCES) -> MatrixWeightedGraph:
        """Read and validate a graph document."""
        graph = validate_graph(GraphReader.read_document(file_name), tol)
        logger.info(f"Read {file_name}: N={graph.n}, d={graph.dim}, edges={len(graph.edges)}")
        return graph

