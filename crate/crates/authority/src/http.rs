//! HTTP front end.

use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use bpk_core::envelope::{b64, unb64, Enveloped};
use bpk_core::{G1Point, Pseudonym, SpKeyPair};
use tokio::net::TcpListener;

use crate::api::*;
use crate::authority::Authority;
use crate::error::ServiceError;

type Shared = Arc<Authority>;

impl ServiceError {
    pub fn status(&self) -> StatusCode {
        use ServiceError::*;
        match self {
            BadRequest(_) => StatusCode::BAD_REQUEST,
            AuthFailed => StatusCode::UNAUTHORIZED,
            PolicyDenied(_) => StatusCode::FORBIDDEN,
            UnknownUid | UnknownSp(_) => StatusCode::NOT_FOUND,
            DuplicateRegistration | SpIdTaken(_) => StatusCode::CONFLICT,
            ProofRejected | UnknownUser => StatusCode::UNPROCESSABLE_ENTITY,
            Storage(_) | Sealing(_) | Config(_) | Scheme(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = self.status();
        let message = if status == StatusCode::INTERNAL_SERVER_ERROR {
            log::error!("{self}");
            "internal error".to_string()
        } else {
            self.to_string()
        };
        let body = ErrorBody {
            error: self.code().to_string(),
            message,
        };
        (status, Json(body)).into_response()
    }
}

type Reply<T> = Result<Json<T>, ServiceError>;

/// Runs a blocking operation off the async executor.
async fn blocking<T, F>(f: F) -> Reply<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ServiceError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json),
        Err(e) => Err(ServiceError::Storage(format!("worker failed: {e}"))),
    }
}

fn point(field: &str, s: &str) -> Result<G1Point, ServiceError> {
    unb64(s)
        .ok()
        .and_then(|b| G1Point::from_bytes(&b).ok())
        .ok_or_else(|| ServiceError::BadRequest(format!("{field} is not an encoded group element")))
}

fn proof_bytes(s: &str) -> Result<Vec<u8>, ServiceError> {
    unb64(s).map_err(|_| ServiceError::BadRequest("proof is not base64".into()))
}

pub fn router(authority: Shared) -> Router {
    Router::new()
        .route("/v1/params", get(params))
        .route("/v1/users", post(register_user))
        .route("/v1/users/:uid", get(user))
        .route("/v1/users/:uid/key", post(request_key))
        .route("/v1/sps", post(register_sp))
        .route("/v1/sps/:id", get(sp))
        .route("/v1/sps/:id/pseudonyms", post(pseudonym))
        .route("/v1/open", post(open))
        .route("/v1/link", post(link))
        .route("/v1/audit", get(audit))
        .with_state(authority)
}

/// Serves until the listener fails or the process is interrupted.
pub async fn serve(authority: Shared, listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(authority))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn params(State(a): State<Shared>) -> Json<ParamsResponse> {
    Json(ParamsResponse {
        params: a.pp().to_envelope(),
        mpk: a.mpk().to_envelope(),
    })
}

async fn register_user(
    State(a): State<Shared>,
    Json(req): Json<RegisterUserRequest>,
) -> Result<(StatusCode, Json<RegisterUserResponse>), ServiceError> {
    let reply = blocking(move || {
        let reg = a.register_user(&req.attributes)?;
        Ok(RegisterUserResponse {
            uid: reg.uid,
            upk: b64(&reg.upk.to_bytes()),
            enrollment_token: reg.enrollment_token,
        })
    })
    .await?;
    Ok((StatusCode::CREATED, reply))
}

async fn user(State(a): State<Shared>, Path(uid): Path<String>) -> Reply<UserInfo> {
    blocking(move || {
        let u = a.user(&uid)?;
        Ok(UserInfo {
            uid: u.uid,
            upk: b64(&u.upk.to_bytes()),
            created_at_ms: u.created_at_ms,
            keys_issued: u.keys_issued,
        })
    })
    .await
}

async fn request_key(
    State(a): State<Shared>,
    Path(uid): Path<String>,
    Json(req): Json<KeyRequest>,
) -> Reply<KeyResponse> {
    blocking(move || {
        let kp = a.request_user_key(&uid, &req.token)?;
        Ok(KeyResponse {
            uid,
            user_key: kp.to_envelope(),
        })
    })
    .await
}

async fn register_sp(
    State(a): State<Shared>,
    Json(req): Json<RegisterSpRequest>,
) -> Result<(StatusCode, Json<RegisterSpResponse>), ServiceError> {
    let reply = blocking(move || {
        let reg = a.register_sp(&req.sp_id, req.trust, req.metadata)?;
        Ok(RegisterSpResponse {
            sp_key: reg.spsk.map(|spsk| {
                SpKeyPair {
                    spsk,
                    sppk: reg.sppk,
                }
                .to_envelope()
            }),
            sp_id: reg.sp_id,
            sppk: b64(&reg.sppk.to_bytes()),
            trust: reg.trust,
            custody: reg.custody,
        })
    })
    .await?;
    Ok((StatusCode::CREATED, reply))
}

async fn sp(State(a): State<Shared>, Path(id): Path<String>) -> Reply<SpInfo> {
    blocking(move || {
        let sp = a.sp(&id)?;
        Ok(SpInfo {
            sp_id: sp.sp_id,
            sppk: b64(&sp.sppk.to_bytes()),
            trust: sp.trust,
        })
    })
    .await
}

async fn pseudonym(
    State(a): State<Shared>,
    Path(id): Path<String>,
    Json(req): Json<PseudonymRequest>,
) -> Reply<PseudonymResponse> {
    blocking(move || {
        let nym = a.compute_pseudonym(&id, &req.uid, &req.eligibility.purpose)?;
        Ok(PseudonymResponse {
            sp_id: id,
            nym: b64(&nym.0.to_bytes()),
        })
    })
    .await
}

async fn open(State(a): State<Shared>, Json(req): Json<OpenRequest>) -> Reply<OpenResponse> {
    blocking(move || {
        let nym = Pseudonym(point("nym", &req.nym)?);
        let proof = proof_bytes(&req.proof)?;
        let uid = a.open_pseudonym(
            &proof,
            &nym,
            &req.sp_id,
            &req.requester,
            &req.justification.into(),
        )?;
        Ok(OpenResponse { uid })
    })
    .await
}

async fn link(State(a): State<Shared>, Json(req): Json<LinkRequest>) -> Reply<LinkResponse> {
    blocking(move || {
        let nym = Pseudonym(point("nym", &req.nym)?);
        let proof = proof_bytes(&req.proof)?;
        let linked = a.link_pseudonym(
            &proof,
            &nym,
            &req.source_sp,
            &req.target_sp,
            &req.requester,
            &req.justification.into(),
        )?;
        Ok(LinkResponse {
            target_sp: req.target_sp,
            nym: b64(&linked.0.to_bytes()),
        })
    })
    .await
}

async fn audit(State(a): State<Shared>) -> Reply<AuditResponse> {
    blocking(move || Ok(AuditResponse { entries: a.audit_log()? })).await
}
