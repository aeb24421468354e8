import json
import logging
import os
import tempfile
from typing import Dict, List

from models.report import ReportSchemaError, SuiteReport, validate_report

logger = logging.getLogger(__name__)


def report_filename(suite: str, n: int) -> str:
    return f"{suite}-n{n}.json"


class ReportWriter:
    """Single serialization point for suite reports."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir

    def path_for(self, suite: str, n: int) -> str:
        return os.path.join(self.out_dir, report_filename(suite, n))

    def write(self, report: SuiteReport) -> str:
        """Write ``<suite>-n<N>.json``, replacing any previous run atomically."""
        payload = report.to_dict()
        errors = validate_report(payload)
        if errors:
            raise ReportSchemaError('; '.join(errors))
        os.makedirs(self.out_dir, exist_ok=True)
        path = self.path_for(report.suite, report.n)
        handle, temp_path = tempfile.mkstemp(prefix=f".{report.suite}-", suffix='.json',
                                             dir=self.out_dir)
        try:
            with os.fdopen(handle, 'w', encoding='utf-8') as stream:
                json.dump(payload, stream, indent=2, ensure_ascii=False)
                stream.write('\n')
            os.replace(temp_path, path)
        except Exception:
            if os.path.exists(temp_path):
                os.remove(temp_path)
            raise
        logger.info(f"Wrote {path} ({payload['summary']['passed']}/{payload['summary']['total']} passed)")
        return path

    def write_all(self, reports: List[SuiteReport]) -> List[str]:
        return [self.write(report) for report in reports]


def load_report(path: str) -> SuiteReport:
    """Re-parse a report file; raises ReportSchemaError when it does not validate."""
    return SuiteReport.from_dict(load_payload(path))


def load_payload(path: str) -> Dict:
    with open(path, 'r', encoding='utf-8') as stream:
        return json.load(stream)
