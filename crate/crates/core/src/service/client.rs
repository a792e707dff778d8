//! Client for the HTTP API in [`super::http`].

use reqwest::{StatusCode, Url};

use super::http::{
    ChallengeRequest, ChallengeResponse, EnrollRequest, EnrollResponse, ErrorBody, VerifyRequest,
};
use super::{GridParams, VerifyResult};
use crate::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("bad server url: {0}")]
    Url(String),
    #[error("server answered {status}: {message}")]
    Api { status: StatusCode, message: String },
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
}

impl ClientError {
    pub fn status(&self) -> Option<StatusCode> {
        match self {
            ClientError::Api { status, .. } => Some(*status),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Client {
    base: Url,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base_url: &str) -> Result<Self, ClientError> {
        let mut base = Url::parse(base_url).map_err(|e| ClientError::Url(e.to_string()))?;
        if base.cannot_be_a_base() {
            return Err(ClientError::Url(format!("{base_url} cannot be a base url")));
        }
        if !base.path().ends_with('/') {
            let p = format!("{}/", base.path());
            base.set_path(&p);
        }
        Ok(Client {
            base,
            http: reqwest::Client::new(),
        })
    }

    fn url(&self, segments: &[&str]) -> Url {
        let mut url = self.base.clone();
        {
            let mut parts = url.path_segments_mut().expect("checked in new");
            parts.pop_if_empty();
            parts.extend(segments);
        }
        url
    }

    async fn check(resp: reqwest::Response) -> Result<reqwest::Response, ClientError> {
        let status = resp.status();
        if status.is_success() {
            return Ok(resp);
        }
        let text = resp.text().await.unwrap_or_default();
        let message = serde_json::from_str::<ErrorBody>(&text)
            .map(|b| b.error)
            .unwrap_or(text);
        Err(ClientError::Api { status, message })
    }

    pub async fn enroll(
        &self,
        user: &str,
        label: &str,
        path: &Path,
        grid: Option<GridParams>,
    ) -> Result<EnrollResponse, ClientError> {
        let body = EnrollRequest {
            user: user.into(),
            label: label.into(),
            path: path.clone(),
            grid_params: grid,
        };
        let resp = self
            .http
            .post(self.url(&["enroll"]))
            .json(&body)
            .send()
            .await?;
        Ok(Self::check(resp).await?.json().await?)
    }

    pub async fn challenge(
        &self,
        user: &str,
        label: &str,
    ) -> Result<ChallengeResponse, ClientError> {
        let body = ChallengeRequest {
            user: user.into(),
            label: label.into(),
        };
        let resp = self
            .http
            .post(self.url(&["challenge"]))
            .json(&body)
            .send()
            .await?;
        Ok(Self::check(resp).await?.json().await?)
    }

    pub async fn verify(
        &self,
        challenge_id: &str,
        password: &str,
    ) -> Result<VerifyResult, ClientError> {
        let body = VerifyRequest {
            challenge_id: challenge_id.into(),
            password: password.into(),
        };
        let resp = self
            .http
            .post(self.url(&["verify"]))
            .json(&body)
            .send()
            .await?;
        Ok(Self::check(resp).await?.json().await?)
    }

    pub async fn revoke(&self, user: &str, label: &str) -> Result<(), ClientError> {
        let resp = self
            .http
            .delete(self.url(&["enrollment", user, label]))
            .send()
            .await?;
        Self::check(resp).await?;
        Ok(())
    }
}
