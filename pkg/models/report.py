from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from models.cyclotomic import CycNum
from models.matrix import Matrix
from models.polynomial import BivariatePoly

SCHEMA_VERSION = '1'
STATUSES = ('pass', 'fail')
MAX_SERIALIZED_ENTRIES = 1024


class ReportSchemaError(ValueError):
    """A report payload does not follow the report schema."""


def serialize_value(value) -> Any:
    """JSON form of anything a verification item compares."""
    if isinstance(value, Matrix):
        if value.rows * value.cols > MAX_SERIALIZED_ENTRIES:
            return {'rows': value.rows, 'cols': value.cols, 'order': value.order,
                    'domain': value.domain.__name__, 'entries': None}
        return value.to_dict()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, (CycNum, BivariatePoly)):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [serialize_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): serialize_value(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def describe_value(value) -> str:
    """Short human-readable form used for passing items."""
    if isinstance(value, Matrix):
        if value.is_zero():
            return f"0 ({value.rows}x{value.cols})"
        return f"{value.rows}x{value.cols} {value.domain.__name__} matrix"
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(describe_value(v) for v in value) + ']'
    return str(value)


@dataclass
class ReportItem:
    """One verified identity"""
    id: str
    status: str
    lhs: Any = None
    rhs: Any = None
    detail: Optional[Dict] = None

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    @classmethod
    def compare(cls, item_id: str, lhs, rhs, detail: Optional[Dict] = None) -> 'ReportItem':
        """Exact comparison; failing items carry both serialized sides and the first differences."""
        equal = lhs == rhs
        if equal:
            return cls(item_id, 'pass', describe_value(lhs), describe_value(rhs), detail)
        extra = dict(detail or {})
        if isinstance(lhs, Matrix) and isinstance(rhs, Matrix) and lhs.shape == rhs.shape:
            extra['differences'] = lhs.differences(rhs)
        return cls(item_id, 'fail', serialize_value(lhs), serialize_value(rhs), extra or None)

    @classmethod
    def truth(cls, item_id: str, holds: bool, lhs=None, rhs=None,
              detail: Optional[Dict] = None) -> 'ReportItem':
        return cls(item_id, 'pass' if holds else 'fail',
                   describe_value(lhs) if holds else serialize_value(lhs),
                   describe_value(rhs) if holds else serialize_value(rhs), detail)

    def to_dict(self) -> Dict:
        payload = {'id': self.id, 'status': self.status, 'lhs': self.lhs, 'rhs': self.rhs}
        if self.detail:
            payload['detail'] = self.detail
        return payload

    @classmethod
    def from_dict(cls, payload: Dict) -> 'ReportItem':
        return cls(payload['id'], payload['status'], payload.get('lhs'), payload.get('rhs'),
                   payload.get('detail'))


@dataclass
class SuiteReport:
    """All items of one suite at one N"""
    suite: str
    n: int
    items: List[ReportItem] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> List[ReportItem]:
        return [item for item in self.items if not item.passed]

    def add(self, item: ReportItem) -> ReportItem:
        self.items.append(item)
        return item

    def extend(self, items) -> None:
        self.items.extend(items)

    def summary(self) -> Dict:
        failed = len(self.failures)
        return {'total': len(self.items), 'passed': len(self.items) - failed, 'failed': failed,
                'status': 'pass' if failed == 0 else 'fail'}

    def to_dict(self) -> Dict:
        payload = {
            'schema': SCHEMA_VERSION,
            'suite': self.suite,
            'n': self.n,
            'items': [item.to_dict() for item in self.items],
            'summary': self.summary(),
            'warnings': list(self.warnings),
        }
        for key, value in self.extras.items():
            payload.setdefault(key, serialize_value(value))
        return payload

    @classmethod
    def from_dict(cls, payload: Dict) -> 'SuiteReport':
        errors = validate_report(payload)
        if errors:
            raise ReportSchemaError('; '.join(errors))
        known = {'schema', 'suite', 'n', 'items', 'summary', 'warnings'}
        return cls(suite=payload['suite'], n=payload['n'],
                   items=[ReportItem.from_dict(item) for item in payload['items']],
                   warnings=list(payload.get('warnings', [])),
                   extras={k: v for k, v in payload.items() if k not in known})


def validate_report(payload: Dict) -> List[str]:
    """Schema check of a report payload; returns the list of problems (empty when valid)."""
    errors = []
    if not isinstance(payload, dict):
        return ['report must be a JSON object']
    if payload.get('schema') != SCHEMA_VERSION:
        errors.append(f"schema must be {SCHEMA_VERSION!r}")
    if not isinstance(payload.get('suite'), str) or not payload.get('suite'):
        errors.append('suite must be a non-empty string')
    n = payload.get('n')
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        errors.append('n must be an integer >= 2')
    items = payload.get('items')
    if not isinstance(items, list):
        errors.append('items must be a list')
        items = []
    seen = set()
    for position, item in enumerate(items):
        if not isinstance(item, dict):
            errors.append(f'items[{position}] must be an object')
            continue
        for key in ('id', 'status', 'lhs', 'rhs'):
            if key not in item:
                errors.append(f'items[{position}] is missing {key!r}')
        if item.get('status') not in STATUSES:
            errors.append(f'items[{position}].status must be one of {STATUSES}')
        if item.get('id') in seen:
            errors.append(f'duplicate item id {item.get("id")!r}')
        seen.add(item.get('id'))
    summary = payload.get('summary')
    if not isinstance(summary, dict):
        errors.append('summary must be an object')
    elif not errors:
        failed = sum(1 for item in items if item['status'] == 'fail')
        if summary.get('total') != len(items) or summary.get('failed') != failed:
            errors.append('summary does not match items')
    if not isinstance(payload.get('warnings', []), list):
        errors.append('warnings must be a list')
    return errors
