//! In-process service: enroll a path, log in against fresh diagrams, replay, expire, revoke.
//!
//! cargo run --example login_round_trip

use std::sync::Arc;

use chrono::{Duration, Utc};
use pathword::service::seal::MasterKey;
use pathword::service::{GridParams, ManualClock, Service, ServiceConfig};
use pathword::{derive, random_path};

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let clock = Arc::new(ManualClock::new(Utc::now()));
    let config = ServiceConfig::new(dir.path(), MasterKey::generate()).with_clock(clock.clone());
    let service = Service::open(config).unwrap();

    // The user's secret: 10 cells of a 10x10 grid.
    let path = random_path(10, 10, 10, None).unwrap();
    service
        .enroll("alice", "high", path.clone(), GridParams::default())
        .unwrap();
    println!("enrolled alice/high: {path}");

    for attempt in 1..=3 {
        let challenge = service.issue_challenge("alice", "high").unwrap();
        let password = derive(&path, &challenge.diagram).unwrap();
        let outcome = service
            .verify(&challenge.id, password.text())
            .unwrap()
            .outcome;
        println!(
            "login {attempt}: diagram {} password {} -> {outcome}",
            challenge.diagram.id(),
            password.text()
        );
        let again = service
            .verify(&challenge.id, password.text())
            .unwrap()
            .outcome;
        println!("         same answer again -> {again}");
    }

    let challenge = service.issue_challenge("alice", "high").unwrap();
    println!(
        "wrong answer -> {}",
        service.verify(&challenge.id, "00").unwrap().outcome
    );

    let challenge = service.issue_challenge("alice", "high").unwrap();
    let password = derive(&path, &challenge.diagram).unwrap();
    clock.advance(service.ttl() + Duration::seconds(1));
    println!(
        "late answer -> {}",
        service
            .verify(&challenge.id, password.text())
            .unwrap()
            .outcome
    );

    let pending = service.issue_challenge("alice", "high").unwrap();
    service.revoke("alice", "high").unwrap();
    println!(
        "after revoke -> {}",
        service.verify(&pending.id, "whatever").unwrap().outcome
    );
    println!(
        "new challenge -> {}",
        service.issue_challenge("alice", "high").unwrap_err()
    );
}
