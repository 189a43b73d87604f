"""HTTP session service driving the browser playground.

Sessions are in-memory and per-instance; each session's operations are
serialized behind its own lock, so the one-thread-per-reduction contract
of the engine holds even with concurrent requests.  The service adds no
reduction semantics of its own: stepping a session gives exactly what the
library's reduction gives for the same input, seed and weight.
"""

from __future__ import annotations

import itertools
import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .costs import account, default_costs
from .engine import NORMAL_FORM, ReductionSession, StrategyConfig
from .molgraph import MolError, cap_free_edges, parse_mol, serialize_mol, validate
from .ski import TermParseError, parse_term, term_to_mol, term_to_string
from .tokens import TOKEN_TYPES, Ledger


class SessionRequest(BaseModel):
    term: str | None = None
    mol: str | None = None
    seed: int = 0
    weight: float = Field(default=0.5, ge=0.0, le=1.0)
    tokenMode: str = "open"
    prefund: int = 0
    costs: dict[str, int] | None = None


class StepRequest(BaseModel):
    passes: int = Field(default=1, ge=1, le=10000)


class ConfigRequest(BaseModel):
    weight: float = Field(ge=0.0, le=1.0)


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message


class Session:
    def __init__(self, sid: str, engine: ReductionSession):
        self.id = sid
        self.engine = engine
        self.lock = threading.Lock()

    def state(self) -> dict:
        eng = self.engine
        report = account(eng.trace, eng.costs)
        term = eng.decoded_term()
        return {
            "id": self.id,
            "mol": serialize_mol(eng.graph),
            "nodes": eng.graph.node_count,
            "ledger": eng.ledger.to_json(),
            "costReport": report.to_json(),
            "stepCount": eng.pass_index,
            "rewriteCount": len(eng.trace.records),
            "decodedTerm": term_to_string(term) if term is not None else None,
            "outcome": eng.outcome,
            "weight": eng.cfg.weight,
            "seed": eng.cfg.seed,
            "tokenMode": eng.cfg.token_mode,
        }


def create_app(frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="skimol service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    ids = itertools.count(1)

    @app.exception_handler(ApiError)
    async def api_error(_, exc: ApiError):
        return JSONResponse({"error": exc.message}, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def invalid_body(_, exc: RequestValidationError):
        return JSONResponse({"error": str(exc)}, status_code=400)

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise ApiError(404, f"unknown session {sid!r}")
        return session

    def build_engine(req: SessionRequest) -> ReductionSession:
        if (req.term is None) == (req.mol is None):
            raise ApiError(400, "provide exactly one of 'term' or 'mol'")
        try:
            if req.term is not None:
                graph = term_to_mol(parse_term(req.term))
            else:
                graph = cap_free_edges(parse_mol(req.mol, allow_minted=True))
        except (TermParseError, MolError) as exc:
            raise ApiError(400, str(exc))
        report = validate(graph)
        if not report.ok:
            raise ApiError(400, "; ".join(report.errors))
        costs = default_costs()
        if req.costs:
            unknown = set(req.costs) - set(TOKEN_TYPES)
            if unknown:
                raise ApiError(400, f"unknown token types: {sorted(unknown)}")
            costs.update(req.costs)
        try:
            cfg = StrategyConfig(weight=req.weight, seed=req.seed, token_mode=req.tokenMode)
        except ValueError as exc:
            raise ApiError(400, str(exc))
        ledger = Ledger(req.tokenMode)
        ledger.names.ensure_above(graph.edge_names())
        if req.prefund:
            ledger.fund(req.prefund)
        return ReductionSession(graph, ledger, cfg, costs)

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.post("/sessions", status_code=201)
    def create_session(req: SessionRequest):
        engine = build_engine(req)
        with registry_lock:
            sid = f"s{next(ids)}"
            session = Session(sid, engine)
            sessions[sid] = session
        return {"id": sid, "state": session.state()}

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = get_session(sid)
        with session.lock:
            return session.state()

    @app.post("/sessions/{sid}/step")
    def step(sid: str, req: StepRequest):
        session = get_session(sid)
        with session.lock:
            eng = session.engine
            if eng.outcome == NORMAL_FORM:
                raise ApiError(409, "session already reached normal form")
            before = len(eng.trace.records)
            pass_stats = []
            for _ in range(req.passes):
                info = eng.step_pass()
                pass_stats.append(info.to_json())
                if info.applied == 0 and info.comb == 0 and not eng.has_any_match():
                    eng.outcome = NORMAL_FORM
                    break
            records = [r.to_json() for r in eng.trace.records[before:]]
            return {
                "records": records,
                "passStats": pass_stats,
                "state": session.state(),
            }

    @app.patch("/sessions/{sid}/config")
    def patch_config(sid: str, req: ConfigRequest):
        session = get_session(sid)
        with session.lock:
            session.engine.cfg.weight = req.weight
            return {"state": session.state()}

    @app.delete("/sessions/{sid}", status_code=204)
    def delete_session(sid: str):
        with registry_lock:
            if sid not in sessions:
                raise ApiError(404, f"unknown session {sid!r}")
            del sessions[sid]

    static_dir = Path(frontend_dir) if frontend_dir else Path(__file__).resolve().parents[2] / "frontend" / "public"
    if static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="playground")

    return app
