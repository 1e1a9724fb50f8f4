"""HTTP facade for the elicitation-and-optimization workflow.

The API is stateful: a session is created with a cost model and DI band,
then walks the workflow in order. Uploading a cohort unlocks tradeoff
sampling; storing a consistent rating set unlocks optimization, which runs
as a background job the client polls. Requests that skip a prerequisite get
a 409 so the workflow ordering is a hard state machine, not a convention.

Each session persists as one JSON document under the data directory,
rewritten atomically (write to a temp file, then rename) on every mutation.
A process restart reloads every document; jobs that were still running are
marked failed because their in-memory state is gone, while finished results
are returned exactly as stored.

Error responses share one shape: {"code": machine-readable string,
"message": human text, "detail": optional structure}. Client-side request
problems are 400, cohort content problems are 422 with the offending row,
missing resources are 404, and workflow violations are 409. Inconsistent
ratings are NOT an error: the computation succeeded, so the result comes
back as HTTP 200 with consistent=false and a re-rate directive, and nothing
is persisted.
"""

from __future__ import annotations

import json
import logging
import math
import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import pydantic
from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .ahp import (
    AhpRatings,
    AhpResult,
    ComparisonMatrix,
    aggregate,
    build_matrix,
    check_consistency,
    elicitation_scales,
    principal_eigen,
)
from .cohort import (
    Cohort,
    CohortError,
    Group,
    ScoredRecord,
    SyntheticSpec,
    generate_cohort,
    parse_cohort,
)
from .fairmetrics import DEFAULT_DI_BOUNDS, CostModel, MetricPoint, ThresholdPair
from .optimizer import (
    DEFAULT_SCALES,
    Objective,
    TpeConfig,
    result_to_dict,
    tpe_minimize,
)
from .tradeoff import CloudFilter, TradeoffCloud, filter_cloud, metric_ranges, sample_cloud

log = logging.getLogger(__name__)

#: Background workers shared by all sessions of one app instance.
WORKER_POOL_SIZE = 2
#: Job progress is republished after this many trials.
PROGRESS_EVERY = 25
DEFAULT_PAGE_SIZE = 2000


class ApiError(Exception):
    """Carries the HTTP status plus the machine-readable error body."""

    def __init__(self, status: int, code: str, message: str, detail: object = None) -> None:
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


class JobStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


@dataclass
class JobRecord:
    id: str
    status: JobStatus
    completed: int
    total: int
    error: str | None = None
    result: dict | None = None

    @property
    def active(self) -> bool:
        return self.status in (JobStatus.PENDING, JobStatus.RUNNING)


@dataclass
class SessionState:
    id: str
    created: str
    updated: str
    costs: CostModel
    di_bounds: tuple[float, float]
    cohort: Cohort | None = None
    cloud: TradeoffCloud | None = None
    keep_infeasible: bool = False
    ahp: AhpResult | None = None
    job: JobRecord | None = None
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


# ---------------------------------------------------------------------------
# Persistence: one JSON document per session, atomic replace on write.

def _state_to_doc(state: SessionState) -> dict:
    doc: dict = {
        "format": 1,
        "id": state.id,
        "created": state.created,
        "updated": state.updated,
        "costs": {
            "expected_profit": state.costs.expected_profit,
            "expected_cost": state.costs.expected_cost,
            "w_fp": state.costs.w_fp,
            "w_tp": state.costs.w_tp,
        },
        "di_bounds": list(state.di_bounds),
        "cohort": None,
        "cloud": None,
        "ahp": None,
        "job": None,
    }
    if state.cohort is not None:
        doc["cohort"] = {
            "records": [[r.score, r.label, r.group.value] for r in state.cohort.records]
        }
    if state.cloud is not None:
        c = state.cloud
        doc["cloud"] = {
            "sample_count": c.sample_count,
            "kept_count": c.kept_count,
            "di_bounds": list(c.di_bounds),
            "seed": c.seed,
            "keep_infeasible": state.keep_infeasible,
            "points": [
                [
                    p.thresholds.t_unp,
                    p.thresholds.t_priv,
                    p.spd,
                    p.waod,
                    p.di_ratio,
                    p.utility_total,
                    p.utility_per_applicant,
                    p.feasible,
                ]
                for p in c.points
            ],
        }
    if state.ahp is not None:
        a = state.ahp
        doc["ahp"] = {
            "matrix_upper": list(a.matrix.upper),
            "weights": list(a.weights),
            "lambda_max": a.lambda_max,
            "ci": a.consistency_index,
            "cr": a.consistency_ratio,
            "consistent": a.consistent,
        }
    if state.job is not None:
        j = state.job
        doc["job"] = {
            "id": j.id,
            "status": j.status.value,
            "completed": j.completed,
            "total": j.total,
            "error": j.error,
            "result": j.result,
        }
    return doc


def _state_from_doc(doc: dict) -> SessionState:
    costs = CostModel(**doc["costs"])
    state = SessionState(
        id=doc["id"],
        created=doc["created"],
        updated=doc["updated"],
        costs=costs,
        di_bounds=tuple(doc["di_bounds"]),
    )
    if doc.get("cohort") is not None:
        state.cohort = Cohort(
            tuple(
                ScoredRecord(score=row[0], label=row[1], group=Group(row[2]))
                for row in doc["cohort"]["records"]
            )
        )
    if doc.get("cloud") is not None:
        c = doc["cloud"]
        points = tuple(
            MetricPoint(
                thresholds=ThresholdPair(t_unp=row[0], t_priv=row[1]),
                spd=row[2],
                waod=row[3],
                di_ratio=row[4],
                utility_total=row[5],
                utility_per_applicant=row[6],
                feasible=row[7],
            )
            for row in c["points"]
        )
        state.cloud = TradeoffCloud(
            points=points,
            sample_count=c["sample_count"],
            kept_count=c["kept_count"],
            di_bounds=tuple(c["di_bounds"]),
            seed=c["seed"],
        )
        state.keep_infeasible = c["keep_infeasible"]
    if doc.get("ahp") is not None:
        a = doc["ahp"]
        state.ahp = AhpResult(
            matrix=ComparisonMatrix.from_upper(*a["matrix_upper"]),
            weights=tuple(a["weights"]),
            lambda_max=a["lambda_max"],
            consistency_index=a["ci"],
            consistency_ratio=a["cr"],
            consistent=a["consistent"],
        )
    if doc.get("job") is not None:
        j = doc["job"]
        job = JobRecord(
            id=j["id"],
            status=JobStatus(j["status"]),
            completed=j["completed"],
            total=j["total"],
            error=j["error"],
            result=j["result"],
        )
        if job.active:
            # The worker thread died with the previous process.
            job.status = JobStatus.FAILED
            job.error = "interrupted by process restart"
        state.job = job
    return state


class SessionStore:
    """In-memory session map backed by per-session JSON documents."""

    def __init__(self, data_dir: str | Path) -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, SessionState] = {}
        self._map_lock = threading.Lock()
        self._load_all()

    def _load_all(self) -> None:
        for path in sorted(self.data_dir.glob("*.json")):
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                state = _state_from_doc(doc)
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("skipping unreadable session file %s: %s", path, exc)
                continue
            self._sessions[state.id] = state
            if state.job is not None and state.job.error == "interrupted by process restart":
                self.persist(state)

    def create(self, costs: CostModel, di_bounds: tuple[float, float]) -> SessionState:
        now = _now()
        state = SessionState(
            id=uuid.uuid4().hex, created=now, updated=now, costs=costs, di_bounds=di_bounds
        )
        with self._map_lock:
            self._sessions[state.id] = state
        self.persist(state)
        return state

    def get(self, session_id: str) -> SessionState:
        with self._map_lock:
            state = self._sessions.get(session_id)
        if state is None:
            raise ApiError(404, "not_found", f"no session {session_id}")
        return state

    def persist(self, state: SessionState) -> None:
        state.updated = _now()
        path = self.data_dir / f"{state.id}.json"
        tmp = self.data_dir / f".{state.id}.tmp"
        tmp.write_text(json.dumps(_state_to_doc(state)), encoding="utf-8")
        os.replace(tmp, path)


# ---------------------------------------------------------------------------
# Request schemas. Validation failures surface as 400, not FastAPI's 422;
# 422 is reserved for cohort content problems.

class CostModelIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    expected_profit: float = Field(2000.0, ge=0)
    expected_cost: float = Field(10000.0, ge=0)
    w_fp: float = Field(5.0, gt=0)
    w_tp: float = Field(1.0, gt=0)

    def to_domain(self) -> CostModel:
        return CostModel(
            expected_profit=self.expected_profit,
            expected_cost=self.expected_cost,
            w_fp=self.w_fp,
            w_tp=self.w_tp,
        )


class CreateSessionIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    costs: CostModelIn = Field(default_factory=CostModelIn)
    di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS

    @field_validator("di_bounds")
    @classmethod
    def _check_bounds(cls, value: tuple[float, float]) -> tuple[float, float]:
        lo, hi = value
        if not 0.0 <= lo <= hi:
            raise ValueError(f"di_bounds must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
        return value


class SyntheticSpecIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n_total: int = Field(1000, ge=2, le=100_000)
    unprivileged_fraction: float = Field(0.19, gt=0, lt=1)
    positive_rate_priv: float = Field(0.7249, gt=0, lt=1)
    positive_rate_unp: float = Field(0.5726, gt=0, lt=1)
    priv_pos_shape: tuple[float, float] = (6.0, 2.0)
    priv_neg_shape: tuple[float, float] = (2.0, 4.0)
    unp_pos_shape: tuple[float, float] = (5.0, 3.0)
    unp_neg_shape: tuple[float, float] = (2.0, 5.0)
    seed: int = Field(7, ge=0)

    @field_validator("priv_pos_shape", "priv_neg_shape", "unp_pos_shape", "unp_neg_shape")
    @classmethod
    def _check_shape(cls, value: tuple[float, float]) -> tuple[float, float]:
        if value[0] <= 0 or value[1] <= 0:
            raise ValueError(f"shape parameters must be positive, got {value}")
        return value

    def to_domain(self) -> SyntheticSpec:
        return SyntheticSpec(
            n_total=self.n_total,
            unprivileged_fraction=self.unprivileged_fraction,
            positive_rate_priv=self.positive_rate_priv,
            positive_rate_unp=self.positive_rate_unp,
            priv_pos_shape=self.priv_pos_shape,
            priv_neg_shape=self.priv_neg_shape,
            unp_pos_shape=self.unp_pos_shape,
            unp_neg_shape=self.unp_neg_shape,
            seed=self.seed,
        )


class TradeoffIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int = Field(10000, ge=1, le=1_000_000)
    seed: int = Field(0, ge=0)
    keep_infeasible: bool = False


class RatingsIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    util_vs_spd: float
    util_vs_waod: float
    spd_vs_waod: float

    def to_domain(self) -> AhpRatings:
        return AhpRatings(
            util_vs_spd=self.util_vs_spd,
            util_vs_waod=self.util_vs_waod,
            spd_vs_waod=self.spd_vs_waod,
        )


class OptimizeIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n_trials: int = Field(500, ge=2, le=100_000)
    n_startup: int = Field(20, ge=1)
    gamma: float = Field(0.25, gt=0, lt=1)
    n_candidates: int = Field(24, ge=1, le=1000)
    seed: int = Field(0, ge=0)
    bandwidth_floor_divisor: int = Field(100, ge=1)

    def to_domain(self) -> TpeConfig:
        return TpeConfig(
            n_trials=self.n_trials,
            n_startup=self.n_startup,
            gamma=self.gamma,
            n_candidates=self.n_candidates,
            seed=self.seed,
            bandwidth_floor_divisor=self.bandwidth_floor_divisor,
        )


# ---------------------------------------------------------------------------
# Response shaping helpers.

def _json_float(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _point_dict(p: MetricPoint) -> dict:
    return {
        "t_unp": p.thresholds.t_unp,
        "t_priv": p.thresholds.t_priv,
        "spd": p.spd,
        "waod": p.waod,
        "di_ratio": _json_float(p.di_ratio),
        "utility_total": p.utility_total,
        "utility_per_applicant": p.utility_per_applicant,
        "feasible": p.feasible,
    }


def _ahp_dict(result: AhpResult) -> dict:
    return {
        "weights": list(result.weights),
        "lambda_max": result.lambda_max,
        "ci": result.consistency_index,
        "cr": result.consistency_ratio,
        "consistent": result.consistent,
        "matrix_upper": list(result.matrix.upper),
    }


def _derived_scales(cloud: TradeoffCloud | None) -> tuple[tuple[float, float, float], str]:
    """Elicitation scales from the feasible cloud, default scales otherwise."""
    if cloud is not None:
        feasible = filter_cloud(cloud, CloudFilter(feasible_only=True))
        if feasible.points:
            try:
                return elicitation_scales(metric_ranges(feasible), intervals=2), "cloud"
            except ValueError:
                pass
    return DEFAULT_SCALES, "default"


def _scales_dict(cloud: TradeoffCloud | None) -> dict:
    (s_util, s_spd, s_waod), source = _derived_scales(cloud)
    return {"s_util": s_util, "s_spd": s_spd, "s_waod": s_waod, "source": source}


def _ranges_dict(cloud: TradeoffCloud) -> dict | None:
    if not cloud.points:
        return None
    r = metric_ranges(cloud)
    return {
        "spd": list(r.spd),
        "waod": list(r.waod),
        "utility_per_applicant": list(r.utility_per_applicant),
    }


def _cohort_summary(cohort: Cohort) -> dict:
    return {
        "n_priv": cohort.n_priv,
        "n_unp": cohort.n_unp,
        "positive_rate_priv": cohort.positive_rate(Group.PRIVILEGED),
        "positive_rate_unp": cohort.positive_rate(Group.UNPRIVILEGED),
    }


def _job_dict(job: JobRecord) -> dict:
    return {
        "job_id": job.id,
        "status": job.status.value,
        "completed": job.completed,
        "total": job.total,
        "error": job.error,
    }


def _session_summary(state: SessionState) -> dict:
    return {
        "id": state.id,
        "created": state.created,
        "updated": state.updated,
        "costs": {
            "expected_profit": state.costs.expected_profit,
            "expected_cost": state.costs.expected_cost,
            "w_fp": state.costs.w_fp,
            "w_tp": state.costs.w_tp,
        },
        "di_bounds": list(state.di_bounds),
        "cohort": None if state.cohort is None else _cohort_summary(state.cohort),
        "cloud": None
        if state.cloud is None
        else {
            "sample_count": state.cloud.sample_count,
            "kept_count": state.cloud.kept_count,
            "n_points": len(state.cloud.points),
            "seed": state.cloud.seed,
            "keep_infeasible": state.keep_infeasible,
            "ranges": _ranges_dict(state.cloud),
        },
        "scales": _scales_dict(state.cloud),
        "weights": None if state.ahp is None else _ahp_dict(state.ahp),
        "job": None if state.job is None else _job_dict(state.job),
    }


def _ensure_no_active_job(state: SessionState) -> None:
    if state.job is not None and state.job.active:
        raise ApiError(
            409, "job_running", "an optimization job is active; wait for it to finish"
        )


def _run_job(
    store: SessionStore,
    state: SessionState,
    job_id: str,
    cohort: Cohort,
    costs: CostModel,
    objective: Objective,
    config: TpeConfig,
) -> None:
    job = state.job
    if job is None or job.id != job_id:
        return
    with state.lock:
        if job.status is not JobStatus.PENDING:
            return
        job.status = JobStatus.RUNNING

    def on_progress(done: int, total: int) -> None:
        if done % PROGRESS_EVERY == 0 or done == total:
            job.completed = done

    try:
        result = tpe_minimize(cohort, costs, objective, config, progress=on_progress)
    except Exception as exc:  # background thread: report, never raise
        log.exception("optimization job %s failed", job_id)
        with state.lock:
            job.status = JobStatus.FAILED
            job.error = str(exc)
            store.persist(state)
        return
    with state.lock:
        job.completed = config.n_trials
        job.result = result_to_dict(result, include_history=True)
        job.result["objective"] = {
            "weights": list(objective.weights),
            "scales": list(objective.scales),
            "di_bounds": list(objective.di_bounds),
        }
        job.status = JobStatus.DONE
        store.persist(state)


def create_app(data_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    """Build the application around one data directory.

    ``static_dir``, when given and existing, is mounted at / after the API
    routes so a built web client can be served by the same process.
    """
    store = SessionStore(data_dir)
    executor = ThreadPoolExecutor(max_workers=WORKER_POOL_SIZE)
    app = FastAPI(title="fairthresh", version="0.1.0")
    app.state.store = store
    app.state.executor = executor

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError) -> JSONResponse:
        body = {"code": exc.code, "message": exc.message, "detail": exc.detail}
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(CohortError)
    async def on_cohort_error(request: Request, exc: CohortError) -> JSONResponse:
        body = {"code": "cohort_invalid", "message": str(exc), "detail": {"row": exc.row}}
        return JSONResponse(status_code=422, content=body)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        detail = [
            {"loc": [str(x) for x in err.get("loc", ())], "msg": err.get("msg", "")}
            for err in exc.errors()
        ]
        body = {"code": "validation_error", "message": "invalid request", "detail": detail}
        return JSONResponse(status_code=400, content=body)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionIn | None = None) -> dict:
        body = body if body is not None else CreateSessionIn()
        state = store.create(body.costs.to_domain(), body.di_bounds)
        return _session_summary(state)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_summary(store.get(session_id))

    @app.post("/sessions/{session_id}/dataset")
    async def upload_dataset(session_id: str, request: Request) -> dict:
        state = store.get(session_id)
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None or isinstance(upload, str):
                raise ApiError(
                    400, "validation_error", "multipart upload must carry a 'file' part"
                )
            raw = await upload.read()
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ApiError(400, "validation_error", f"file is not UTF-8: {exc}")
            cohort = parse_cohort(text)
        else:
            try:
                payload = await request.json()
            except (json.JSONDecodeError, UnicodeDecodeError):
                raise ApiError(
                    400,
                    "validation_error",
                    "send multipart/form-data with a CSV 'file' or a JSON generator spec",
                )
            try:
                spec = SyntheticSpecIn(**payload if isinstance(payload, dict) else {})
            except pydantic.ValidationError as exc:
                raise ApiError(
                    400,
                    "validation_error",
                    "invalid generator spec",
                    detail=[{"loc": [str(x) for x in e["loc"]], "msg": e["msg"]} for e in exc.errors()],
                )
            cohort = generate_cohort(spec.to_domain())
        with state.lock:
            _ensure_no_active_job(state)
            state.cohort = cohort
            state.cloud = None
            state.keep_infeasible = False
            state.job = None
            store.persist(state)
        return _cohort_summary(cohort)

    @app.post("/sessions/{session_id}/tradeoff")
    def sample_tradeoff(session_id: str, body: TradeoffIn | None = None) -> dict:
        body = body if body is not None else TradeoffIn()
        state = store.get(session_id)
        with state.lock:
            _ensure_no_active_job(state)
            if state.cohort is None:
                raise ApiError(
                    409, "workflow_order", "no cohort stored; upload a dataset first"
                )
            cloud = sample_cloud(
                state.cohort,
                state.costs,
                n=body.n,
                di_bounds=state.di_bounds,
                seed=body.seed,
                keep_infeasible=body.keep_infeasible,
            )
            state.cloud = cloud
            state.keep_infeasible = body.keep_infeasible
            store.persist(state)
        return {
            "sample_count": cloud.sample_count,
            "kept_count": cloud.kept_count,
            "n_points": len(cloud.points),
            "seed": cloud.seed,
            "keep_infeasible": body.keep_infeasible,
            "ranges": _ranges_dict(cloud),
            "scales": _scales_dict(cloud),
        }

    @app.get("/sessions/{session_id}/tradeoff")
    def get_tradeoff(
        session_id: str,
        min_utility: float | None = Query(None),
        max_abs_spd: float | None = Query(None, ge=0),
        max_abs_waod: float | None = Query(None, ge=0),
        feasible_only: bool = Query(False),
        page: int = Query(1, ge=1),
        page_size: int = Query(DEFAULT_PAGE_SIZE, ge=1, le=10_000),
    ) -> dict:
        state = store.get(session_id)
        cloud = state.cloud
        if cloud is None:
            raise ApiError(409, "workflow_order", "no tradeoff cloud; sample one first")
        predicate = CloudFilter(
            min_utility=min_utility,
            max_abs_spd=max_abs_spd,
            max_abs_waod=max_abs_waod,
            feasible_only=feasible_only,
        )
        filtered = filter_cloud(cloud, predicate)
        total = len(filtered.points)
        page_count = max(1, math.ceil(total / page_size))
        start = (page - 1) * page_size
        chunk = filtered.points[start : start + page_size]
        return {
            "points": [_point_dict(p) for p in chunk],
            "page": page,
            "page_size": page_size,
            "page_count": page_count,
            "total_points": total,
            "kept_count": filtered.kept_count,
            "sample_count": cloud.sample_count,
        }

    @app.post("/sessions/{session_id}/ratings")
    def submit_ratings(session_id: str, body: RatingsIn | list[RatingsIn]) -> dict:
        state = store.get(session_id)
        try:
            if isinstance(body, list):
                matrix = aggregate([r.to_domain() for r in body])
            else:
                matrix = build_matrix(body.to_domain())
        except ValueError as exc:
            raise ApiError(400, "validation_error", str(exc))
        result = principal_eigen(matrix)
        consistent, message = check_consistency(result)
        payload = _ahp_dict(result)
        payload["message"] = message
        payload["persisted"] = consistent
        payload["directive"] = None if consistent else "re_rate"
        if consistent:
            with state.lock:
                _ensure_no_active_job(state)
                state.ahp = result
                store.persist(state)
        return payload

    @app.get("/sessions/{session_id}/weights")
    def get_weights(session_id: str) -> dict:
        state = store.get(session_id)
        if state.ahp is None:
            raise ApiError(404, "not_found", "no consistent ratings stored for session")
        return _ahp_dict(state.ahp)

    @app.post("/sessions/{session_id}/optimize", status_code=202)
    def start_optimization(session_id: str, body: OptimizeIn | None = None) -> dict:
        body = body if body is not None else OptimizeIn()
        state = store.get(session_id)
        with state.lock:
            if state.cohort is None:
                raise ApiError(
                    409, "workflow_order", "no cohort stored; upload a dataset first"
                )
            if state.ahp is None:
                raise ApiError(
                    409,
                    "workflow_order",
                    "no consistent ratings stored; submit ratings first",
                )
            _ensure_no_active_job(state)
            try:
                config = body.to_domain()
            except ValueError as exc:
                raise ApiError(400, "validation_error", str(exc))
            scales, _ = _derived_scales(state.cloud)
            objective = Objective(
                weights=state.ahp.weights, scales=scales, di_bounds=state.di_bounds
            )
            job = JobRecord(
                id=uuid.uuid4().hex,
                status=JobStatus.PENDING,
                completed=0,
                total=config.n_trials,
            )
            state.job = job
            cohort, costs = state.cohort, state.costs
            store.persist(state)
        executor.submit(_run_job, store, state, job.id, cohort, costs, objective, config)
        return _job_dict(job)

    @app.get("/sessions/{session_id}/job")
    def poll_job(session_id: str) -> dict:
        state = store.get(session_id)
        if state.job is None:
            raise ApiError(404, "not_found", "no optimization job for session")
        return _job_dict(state.job)

    @app.get("/sessions/{session_id}/result")
    def get_result(session_id: str) -> dict:
        state = store.get(session_id)
        job = state.job
        if job is None:
            raise ApiError(404, "not_found", "no optimization job for session")
        if job.status is not JobStatus.DONE:
            raise ApiError(
                409,
                "job_not_done",
                f"job is {job.status.value}; the result exists only once it is done",
                detail=_job_dict(job),
            )
        assert job.result is not None
        return job.result

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
