"""
Verification reports shared by validators and suites.
"""
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
NOT_TESTABLE = 'not-testable-at-order'


@dataclass
class Check:
    name: str
    status: str
    witness: dict = None
    detail: str = ''
    elapsed: float = 0.0

    def as_dict(self, timings=False):
        data = {'name': self.name, 'status': self.status}
        if self.witness is not None:
            data['witness'] = self.witness
        if self.detail:
            data['detail'] = self.detail
        if timings:
            data['elapsed'] = round(self.elapsed, 4)
        return data


@dataclass
class Report:
    """Ordered pass/fail records for one suite or validator.

    ``max_degree`` restricts every recorded residual to inputs of total PBW
    degree at most the cap.
    """

    suite: str
    checks: list = field(default_factory=list)
    max_degree: int = None

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def status(self, name):
        return self[name].status

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def add(self, name, ok, witness=None, detail='', elapsed=0.0):
        status = PASS if ok else FAIL
        check = Check(name, status, witness, detail, elapsed)
        self.checks.append(check)
        if ok:
            logger.debug("%s: %s passed", self.suite, name)
        else:
            logger.warning("%s: %s failed %s", self.suite, name, witness or detail)
        return check

    def not_testable(self, name, detail=''):
        self.checks.append(Check(name, NOT_TESTABLE, detail=detail))

    def check_zero(self, name, residual, detail=''):
        """Record a check that a residual LinMap vanishes."""
        if self.max_degree is not None:
            residual = residual.window(self.max_degree)
        return self.add(name, residual.is_zero(), witness=residual.first_entry(), detail=detail)

    def check_equal(self, name, lhs, rhs, detail=''):
        return self.check_zero(name, lhs - rhs, detail=detail)

    @contextmanager
    def timed(self, name):
        """Time a block whose body appends exactly one check named ``name``."""
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        for check in reversed(self.checks):
            if check.name == name:
                check.elapsed = elapsed
                break
        logger.info("%s: %s (%.3fs)", self.suite, name, elapsed)

    def merge(self, other, prefix=None, elapsed=None):
        """Append the checks of ``other``; ``elapsed`` stamps checks that were not timed."""
        for check in other.checks:
            name = f"{prefix}.{check.name}" if prefix else check.name
            spent = check.elapsed or (elapsed or 0.0)
            self.checks.append(Check(name, check.status, check.witness, check.detail, spent))
        return self

    def as_dict(self, timings=False):
        return {
            'suite': self.suite,
            'passed': self.passed,
            'checks': [c.as_dict(timings) for c in sorted(self.checks, key=lambda c: c.name)],
        }
