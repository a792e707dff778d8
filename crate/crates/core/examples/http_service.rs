//! Runs the HTTP service on a free local port and logs in through the client.
//!
//! cargo run --example http_service

use std::sync::Arc;

use pathword::service::client::Client;
use pathword::service::http;
use pathword::service::seal::MasterKey;
use pathword::service::{Service, ServiceConfig};
use pathword::{derive, random_path};

#[tokio::main]
async fn main() {
    let dir = tempfile::tempdir().unwrap();
    let service = Service::open(ServiceConfig::new(dir.path(), MasterKey::generate())).unwrap();
    let server = http::spawn(Arc::new(service), "127.0.0.1:0".parse().unwrap())
        .await
        .unwrap();
    println!("serving on {}", server.url());

    let client = Client::new(&server.url()).unwrap();
    let path = random_path(10, 10, 10, None).unwrap();
    let enrolled = client.enroll("bob", "low", &path, None).await.unwrap();
    println!("{}", serde_json::to_string(&enrolled).unwrap());

    let dup = client.enroll("bob", "low", &path, None).await.unwrap_err();
    println!("enroll again: {dup}");

    let challenge = client.challenge("bob", "low").await.unwrap();
    println!(
        "challenge {} expires {}",
        challenge.challenge_id, challenge.expires_at
    );
    let password = derive(&path, &challenge.diagram).unwrap();
    let first = client
        .verify(&challenge.challenge_id, password.text())
        .await
        .unwrap();
    let second = client
        .verify(&challenge.challenge_id, password.text())
        .await
        .unwrap();
    println!("verify: {} then {}", first.outcome, second.outcome);

    client.revoke("bob", "low").await.unwrap();
    let gone = client.challenge("bob", "low").await.unwrap_err();
    println!("after revoke: {gone}");

    server.stop().await.unwrap();
}
