//! HTTP API over an immutable dataset snapshot.
//!
//! | method | path            | body                                   |
//! |--------|-----------------|----------------------------------------|
//! | GET    | `/healthz`      | `ok`                                   |
//! | GET    | `/api/players`  | ids, positions, eligibility, indices   |
//! | GET    | `/api/criteria` | criterion metadata                     |
//! | POST   | `/api/rank`     | [`RankRequest`] in, [`RankResponse`] out |
//!
//! Every JSON body carries `schema_version`. Errors are
//! `{"schema_version": 1, "error": {"code": ..., "message": ...}}`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;

use crate::basketball::{BoxScoreLine, Criterion, StatBasis};
use crate::error::Error;
use crate::pipeline::{player_indices, run_rank, PlayerIndices, RankRequest, SCHEMA_VERSION};

struct AppState {
    dataset: Vec<BoxScoreLine>,
}

pub fn router(dataset: Vec<BoxScoreLine>) -> Router {
    let state = Arc::new(AppState { dataset });
    Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route("/api/players", get(players))
        .route("/api/criteria", get(criteria))
        .route("/api/rank", post(rank))
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(dataset: Vec<BoxScoreLine>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(dataset)).await
}

fn json<T: Serialize>(status: StatusCode, body: &T) -> Response {
    match serde_json::to_vec(body) {
        Ok(bytes) => (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response(),
        Err(e) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "internal", &e.to_string()),
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    schema_version: u32,
    error: ErrorDetail<'a>,
}

#[derive(Serialize)]
struct ErrorDetail<'a> {
    code: &'a str,
    message: &'a str,
}

fn error_response(status: StatusCode, code: &str, message: &str) -> Response {
    let body = ErrorBody {
        schema_version: SCHEMA_VERSION,
        error: ErrorDetail { code, message },
    };
    let bytes = serde_json::to_vec(&body).unwrap_or_default();
    (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

#[derive(Serialize)]
struct PlayersBody {
    schema_version: u32,
    basis: StatBasis,
    players: Vec<PlayerIndices>,
}

async fn players(State(state): State<Arc<AppState>>) -> Response {
    let basis = StatBasis::default();
    json(
        StatusCode::OK,
        &PlayersBody {
            schema_version: SCHEMA_VERSION,
            basis,
            players: player_indices(&state.dataset, basis),
        },
    )
}

#[derive(Serialize)]
struct CriterionInfo {
    id: &'static str,
    description: &'static str,
    direction: &'static str,
    ranking: bool,
}

#[derive(Serialize)]
struct CriteriaBody {
    schema_version: u32,
    criteria: Vec<CriterionInfo>,
}

async fn criteria() -> Response {
    let criteria = Criterion::ALL
        .iter()
        .map(|&c| CriterionInfo {
            id: c.id(),
            description: c.description(),
            direction: "maximize",
            ranking: Criterion::RANKING.contains(&c),
        })
        .collect();
    json(
        StatusCode::OK,
        &CriteriaBody {
            schema_version: SCHEMA_VERSION,
            criteria,
        },
    )
}

async fn rank(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let req: RankRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error_response(StatusCode::BAD_REQUEST, "malformed_json", &e.to_string()),
    };
    let result = tokio::task::spawn_blocking(move || run_rank(&state.dataset, &req)).await;
    match result {
        Ok(Ok(resp)) => json(StatusCode::OK, &resp),
        Ok(Err(Error::Request { code, message })) => error_response(StatusCode::UNPROCESSABLE_ENTITY, code, &message),
        Ok(Err(e)) => error_response(StatusCode::UNPROCESSABLE_ENTITY, "invalid_input", &e.to_string()),
        Err(e) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "internal", &e.to_string()),
    }
}
