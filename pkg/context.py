"""Context management for one command run: verbosity and file output."""

import logging
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from config import MAP_SUFFIX
from errors import InvalidArgumentError
from reduction import ReducedInstance, render_map, render_reduced
from theorem_report import TheoremReport

logger = logging.getLogger(__name__)


def _stage(path: str, content: str) -> str:
    """Write `content` to a temporary sibling of `path` and return its name."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, temp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    except OSError as e:
        raise InvalidArgumentError(f"cannot write {path}: {e.strerror or e}") from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
    except BaseException as e:
        os.unlink(temp_path)
        if isinstance(e, OSError):
            raise InvalidArgumentError(f"cannot write {path}: {e.strerror or e}") from e
        raise
    return temp_path


def write_atomic_all(files: List[Tuple[str, str]]) -> None:
    """Write every (path, content) pair, or leave all targets as they were.

    All contents are staged next to their targets before the first rename.
    """
    staged: List[Tuple[str, str]] = []
    try:
        for path, content in files:
            staged.append((_stage(path, content), path))
    except BaseException:
        for temp_path, _ in staged:
            os.unlink(temp_path)
        raise

    created: List[str] = []
    try:
        for position, (temp_path, path) in enumerate(staged):
            existed = os.path.exists(path)
            os.replace(temp_path, path)
            if not existed:
                created.append(path)
    except BaseException as e:
        for temp_path, _ in staged[position:]:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
        # replaced pre-existing files cannot be restored; new ones are removed
        for path in created:
            os.unlink(path)
        if isinstance(e, OSError):
            raise InvalidArgumentError(f"cannot write {path}: {e.strerror or e}") from e
        raise


def write_atomic(path: str, content: str) -> None:
    """Write `content` to `path` via a temporary sibling file and a rename."""
    write_atomic_all([(path, content)])


def default_map_path(output_path: str) -> str:
    root, _ = os.path.splitext(output_path)
    return root + MAP_SUFFIX


@dataclass
class RunContext:
    """Context object passed through a command's workflow."""

    verbose: bool = False
    output_data: Dict[str, Any] = field(default_factory=dict)

    def read_text(self, path: str) -> str:
        """Load an input file."""
        if not os.path.exists(path):
            raise InvalidArgumentError(f"input file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                return f.read()
        except UnicodeDecodeError as e:
            raise InvalidArgumentError(f"{path} is not UTF-8 text (byte {e.start})") from e
        except OSError as e:
            raise InvalidArgumentError(f"cannot read {path}: {e.strerror or e}") from e

    def save_text(self, path: Optional[str], content: str):
        """Write content to `path` atomically, or to standard output when path is None."""
        if path is None or path == "-":
            print(content, end="")
            return
        write_atomic(path, content)
        self.output_data.setdefault("written", []).append(path)
        logger.info("wrote %s", path)

    def save_transform_results(self, reduced: ReducedInstance, stp_path: str,
                               map_path: Optional[str] = None) -> str:
        """Save the reduced .stp and its sidecar map together. Returns the map path used."""
        if map_path is None:
            if stp_path == "-":
                raise InvalidArgumentError("--map is required when the reduced instance goes to stdout")
            map_path = default_map_path(stp_path)
        stp_text = render_reduced(reduced)
        files = [(map_path, render_map(reduced))]
        if stp_path != "-":
            files.insert(0, (stp_path, stp_text))
        write_atomic_all(files)
        for path, _ in files:
            self.output_data.setdefault("written", []).append(path)
            logger.info("wrote %s", path)
        if stp_path == "-":
            print(stp_text, end="")
        self.output_data.update({
            "m_value": reduced.m_value,
            "group_count": reduced.group_count,
            "map_path": map_path,
        })
        return map_path

    def save_report(self, report: TheoremReport, path: Optional[str]):
        """Save a campaign report (machine-readable lines)."""
        self.save_text(path, report.render())
        self.output_data["report_path"] = path
        self.output_data["passed"] = report.passed
