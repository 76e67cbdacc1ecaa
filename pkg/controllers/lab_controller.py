"""
Command handlers: parse the text inputs, call the services, wrap the outcome.
"""

import time
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from services.class_service import classify, classify_sweep, parse_class_names, parse_sweep, sweep_csv
from services.config import SearchSettings
from services.errors import BudgetExhaustedError, InputError, LabError, UndecidedError
from services.extension_service import (
    extendability_witness,
    lift_det_zero,
    nu_enumerate,
    pell_simple_extendable,
    revalidate_extension_payload,
    simple_extension,
)
from services.matrix_service import Mat2
from services.regression_service import verify_paper
from services.ring_service import RingSpec
from services.statement_service import STATEMENTS, revalidate_status, statement_report, verify_th8_chain
from services.universal_service import companion_test_matrix, g_evaluation_extension
from services.witness_service import (
    WITNESS_TAGS,
    c9_extension,
    c14_witness,
    cr3_statement3_witness,
    cr3_witness,
    th2_2_witness,
    th5_8_witness,
    th5_9_witness,
)
from utils.parsing import parse_int_list, parse_mat2, parse_ring

Status = Literal["ok", "failed", "unknown", "error"]

EXIT_CODES: Dict[str, int] = {"ok": 0, "failed": 1, "unknown": 2, "error": 3}


class CommandResult(BaseModel):
    model_config = {"populate_by_name": True}

    schema_version: str = Field(default="1", alias="schema")
    subcommand: str
    inputs: Dict[str, str]
    status: Status
    exit_code: int
    outcome: Optional[Any] = None
    error: Optional[str] = None
    note: Optional[Dict[str, Any]] = None
    seconds: float = 0.0


Handler = Callable[[], Tuple[Status, Any]]


class LabController:
    def __init__(self, settings: SearchSettings):
        self.settings = settings

    def run(self, subcommand: str, inputs: Dict[str, Any], handler: Handler) -> CommandResult:
        """Time the handler and map its exceptions onto statuses and exit codes."""
        started = time.perf_counter()
        outcome, error, note = None, None, None
        try:
            status, outcome = handler()
        except BudgetExhaustedError as e:
            status, error, note = "unknown", str(e), e.note or None
            outcome = {"budget": e.budget}
        except UndecidedError as e:
            status, error = "unknown", str(e)
        except LabError as e:
            status, error = "error", str(e)
        return CommandResult(
            subcommand=subcommand,
            inputs={k: str(v) for k, v in inputs.items() if v is not None},
            status=status,
            exit_code=EXIT_CODES[status],
            outcome=outcome,
            error=error,
            note=note,
            seconds=round(time.perf_counter() - started, 3),
        )

    # parsing

    @staticmethod
    def _ring(ring: Optional[str]) -> RingSpec:
        if not ring:
            raise InputError("--ring is required")
        return parse_ring(ring)

    def _matrix(self, ring: Optional[str], matrix: Optional[str]) -> Mat2:
        spec = self._ring(ring)
        if not matrix:
            raise InputError("--matrix is required")
        return parse_mat2(spec, matrix)

    # subcommands

    def extend(self, ring, matrix, simple=False, route="auto", budget=None) -> CommandResult:
        def handler():
            A = self._matrix(ring, matrix)
            limit = _given(budget, self.settings.box_bound)
            if simple or route != "auto" or not A.ring.is_finite:
                witness = simple_extension(A, route, limit)
            else:
                witness = extendability_witness(A)
                if witness is None:
                    return "ok", {"matrix": A.to_payload(), "extendable": False}
            payload = witness.to_payload()
            if not revalidate_extension_payload(A.ring, payload):
                raise InputError("printed extension does not revalidate")
            return "ok", payload

        inputs = {"ring": ring, "matrix": matrix, "simple": simple, "route": route, "budget": budget}
        return self.run("extend", inputs, handler)

    def statements(self, ring, matrix, which=None, budget=None) -> CommandResult:
        def handler():
            A = self._matrix(ring, matrix)
            ks = parse_int_list(which) if which else list(STATEMENTS)
            settings = self.settings.with_overrides(box_bound=budget)
            report = statement_report(A, settings, ks)
            if not all(revalidate_status(A, s) for s in report.statements):
                raise InputError("a printed witness does not revalidate")
            status = "unknown" if any(s.status == "unknown" for s in report.statements) else "ok"
            return status, report.model_dump()

        return self.run("statements", {"ring": ring, "matrix": matrix, "which": which, "budget": budget}, handler)

    def nu(self, ring, matrix, bound=None) -> CommandResult:
        def handler():
            A = self._matrix(ring, matrix)
            return "ok", nu_enumerate(A, _given(bound, self.settings.box_bound)).to_payload()

        return self.run("nu", {"ring": ring, "matrix": matrix, "bound": bound}, handler)

    def lift(self, ring, matrix, t=None, steps=3, budget=None) -> CommandResult:
        def handler():
            _no_budget("lift", budget)
            A = self._matrix(ring, matrix)
            if t is None:
                raise InputError("--t is required")
            sequence = lift_det_zero(A, t, steps)
            payload = sequence.to_payload()
            payload["holds"] = sequence.holds()
            return "ok", payload

        return self.run("lift", {"ring": ring, "matrix": matrix, "t": t, "steps": steps, "budget": budget}, handler)

    def classify(self, ring=None, classes=None, sweep=None, workers=None, budget=None) -> CommandResult:
        def handler():
            _no_budget("classify", budget)
            names = parse_class_names(classes)
            if sweep:
                reports = classify_sweep(parse_sweep(sweep), names, self.settings, workers)
                skipped = any(v.status == "skipped" for r in reports for v in r.verdicts)
                outcome = {"reports": [r.model_dump() for r in reports], "csv": sweep_csv(reports)}
                return ("unknown" if skipped else "ok"), outcome
            report = classify(self._ring(ring), names, self.settings, workers)
            skipped = any(v.status == "skipped" for v in report.verdicts)
            return ("unknown" if skipped else "ok"), report.model_dump()

        return self.run("classify", {"ring": ring, "classes": classes, "sweep": sweep, "budget": budget}, handler)

    def companion(self, ring, matrix, budget=None) -> CommandResult:
        def handler():
            _no_budget("companion", budget)
            A = self._matrix(ring, matrix)
            payload = companion_test_matrix(A).to_payload()
            if A.is_upper_triangular:
                payload["g_evaluation"] = g_evaluation_extension(A).to_payload()
            return "ok", payload

        return self.run("companion", {"ring": ring, "matrix": matrix, "budget": budget}, handler)

    def pell(self, ring, matrix, bound=None) -> CommandResult:
        def handler():
            A = self._matrix(ring, matrix)
            limit = _given(bound, self.settings.pell_bound)
            result = pell_simple_extendable(A, limit)
            if result is None:
                return "unknown", {"found": False, "bound": limit}
            return "ok", {
                "found": True,
                "e": str(result.e),
                "f": str(result.f),
                "unit": str(result.unit),
                "extension": result.witness.to_payload(),
            }

        return self.run("pell", {"ring": ring, "matrix": matrix, "bound": bound}, handler)

    def witness(self, tag, ring=None, matrix=None, args=None, budget=None) -> CommandResult:
        def handler():
            key = (tag or "").upper()
            if key not in WITNESS_TAGS:
                raise InputError(f"unknown tag {tag!r}; expected one of {', '.join(WITNESS_TAGS)}")
            if key in ("C9", "TH2-2"):
                A = self._matrix(ring, matrix)
                if key == "C9":
                    found = c9_extension(A, _given(budget, self.settings.witness_budget))
                    if found is None:
                        return "unknown", {"found": False}
                    return "ok", found.to_payload()
                return "ok", th2_2_witness(A, self.settings).model_dump()
            values = _arity(key, parse_int_list(args or ""))
            scan = _given(budget, self.settings.witness_budget)
            box = _given(budget, self.settings.box_bound)
            solvers = {
                "TH5-8": lambda: th5_8_witness(*values, budget=scan),
                "TH5-9": lambda: th5_9_witness(*values, budget=scan),
                "CR3-2": lambda: cr3_witness(*values, budget=box),
                "CR3-3": lambda: cr3_statement3_witness(*values, budget=box),
                "C14": lambda: c14_witness(*values, budget=box),
            }
            return "ok", solvers[key]().model_dump()

        inputs = {"tag": tag, "ring": ring, "matrix": matrix, "args": args, "budget": budget}
        return self.run("witness", inputs, handler)

    def chain(self, ring, sample=None, seed=0, workers=None, budget=None) -> CommandResult:
        def handler():
            _no_budget("chain", budget)
            report = verify_th8_chain(
                self._ring(ring),
                sample=sample,
                workers=_given(workers, self.settings.workers),
                seed=seed,
                verbose=self.settings.verbose,
            )
            return ("ok" if report.chain_ok else "failed"), report.model_dump()

        return self.run("chain", {"ring": ring, "sample": sample, "seed": seed, "budget": budget}, handler)

    def verify_paper(
        self, only: Optional[List[str]] = None, seed: int = 0, budget: Optional[int] = None
    ) -> CommandResult:
        def handler():
            _no_budget("verify-paper", budget)
            report = verify_paper(only, self.settings, seed)
            return ("ok" if report.passed else "failed"), report.model_dump()

        inputs = {"only": ",".join(only) if only else None, "seed": seed, "budget": budget}
        return self.run("verify-paper", inputs, handler)


_ARITY = {"TH5-8": (4,), "TH5-9": (2, 3), "CR3-2": (3,), "CR3-3": (3,), "C14": (3,)}


def _arity(tag: str, values: List[int]) -> List[int]:
    if len(values) not in _ARITY[tag]:
        expected = " or ".join(str(n) for n in _ARITY[tag])
        raise InputError(f"{tag} takes {expected} integers via --args, got {len(values)}")
    return values


def _given(value: Optional[int], default: int) -> int:
    return default if value is None else value


def _no_budget(subcommand: str, budget: Optional[int]) -> None:
    if budget is not None:
        raise InputError(f"--budget does not apply to {subcommand}")
