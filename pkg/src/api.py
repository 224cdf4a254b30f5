"""
FastAPI service exposing invariants, Cost formulas, Cost searches and graphs.
"""
import json
import logging
from typing import Any, Dict, Optional, Tuple

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel
import uvicorn

from .config import config
from .cost import CostResult, cost_between
from .front_core import (
    ClassicalInvariants,
    OrientedFront,
    classical_invariants,
    orient_front,
    parse_front,
    reverse_orientation,
)
from .graph import build_cost_graph, export_graph
from .isotopy import SearchBudget, cost_search
from .knot_types import builtin_descriptor, dump_descriptor

logger = logging.getLogger(__name__)

app = FastAPI(
    title="Legendrian Cost toolkit",
    description="Invariants, stabilization Cost and Cost graphs of Legendrian fronts",
    version="1.0.0"
)


# Pydantic models
class FrontRequest(BaseModel):
    word: str
    reversed: bool = False


class CostSimpleRequest(BaseModel):
    knot_type: str
    a: Tuple[int, int]
    b: Tuple[int, int]


class CostSearchRequest(BaseModel):
    front_a: FrontRequest
    front_b: FrontRequest
    max_width: Optional[int] = None
    max_events: Optional[int] = None
    max_states: Optional[int] = None
    max_cost: Optional[int] = None


def _front(request: FrontRequest) -> OrientedFront:
    front = orient_front(parse_front(request.word))
    return reverse_orientation(front) if request.reversed else front


@app.post("/invariants", response_model=ClassicalInvariants)
async def invariants(request: FrontRequest):
    """Classical invariants of a front word."""
    try:
        return classical_invariants(_front(request))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing invariants: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@app.post("/cost/simple", response_model=CostResult, response_model_exclude_none=True)
async def cost_simple_endpoint(request: CostSimpleRequest):
    try:
        return cost_between(builtin_descriptor(request.knot_type), request.a, request.b)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error in cost formula endpoint: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@app.post("/cost/search", response_model=CostResult, response_model_exclude_none=True)
def cost_search_endpoint(request: CostSearchRequest):
    """Bounded stabilization search; runs in the threadpool."""
    try:
        budget = SearchBudget.build(
            max_width=request.max_width,
            max_events=request.max_events,
            max_states=request.max_states,
            max_cost=request.max_cost,
        )
        return cost_search(_front(request.front_a), _front(request.front_b), budget)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error in cost search endpoint: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@app.get("/graph/{knot_type}")
async def graph_endpoint(knot_type: str, floor: int, format: str = "json"):
    try:
        graph = build_cost_graph(builtin_descriptor(knot_type), floor)
        text = export_graph(graph, format)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building graph: {e}")
        raise HTTPException(status_code=500, detail=str(e))
    media_type = "application/json" if format == "json" else "text/vnd.graphviz"
    return PlainTextResponse(text, media_type=media_type)


@app.get("/descriptors/{name}")
async def descriptor_endpoint(name: str) -> Dict[str, Any]:
    try:
        return json.loads(dump_descriptor(builtin_descriptor(name)))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": "Legendrian Cost toolkit", "config": config.describe()}


if __name__ == "__main__":
    config.validate()
    uvicorn.run(
        "src.api:app",
        host=config.HOST,
        port=config.PORT,
        reload=config.DEBUG
    )
