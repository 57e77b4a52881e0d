use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use indicolor_service::{router, router_with_state, AppState, ServiceConfig, Snapshot, Status, Turn};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn create(app: &Router, body: Value) -> Snapshot {
    let (status, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    serde_json::from_value(v).unwrap()
}

async fn post_move(app: &Router, id: &str, body: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/sessions/{id}/moves"), Some(body)).await
}

async fn ok_move(app: &Router, id: &str, body: Value) -> Snapshot {
    let (status, v) = post_move(app, id, body).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    serde_json::from_value(v).unwrap()
}

/// Every snapshot is self-consistent: blocked set, availability and status
/// all agree with the colouring.
fn check_snapshot(s: &Snapshot) {
    let adj = |u: usize, v: usize| s.edges.iter().any(|e| (e[0] == u && e[1] == v) || (e[0] == v && e[1] == u));
    for &[u, v] in &s.edges {
        if let (Some(a), Some(b)) = (s.colors[u], s.colors[v]) {
            assert_ne!(a, b, "improper edge {u}-{v}");
        }
    }
    let mut blocked = Vec::new();
    for v in 0..s.n {
        let avail: Vec<usize> = if s.colors[v].is_some() {
            Vec::new()
        } else {
            (1..=s.k).filter(|&c| (0..s.n).all(|u| !adj(u, v) || s.colors[u] != Some(c))).collect()
        };
        assert_eq!(s.available[v], avail);
        if s.colors[v].is_none() && avail.is_empty() {
            blocked.push(v);
        }
    }
    assert_eq!(s.blocked, blocked);
    let expected = if !blocked.is_empty() {
        Status::BenWon
    } else if s.colors.iter().all(Option::is_some) {
        Status::AnnWon
    } else {
        Status::InProgress
    };
    assert_eq!(s.status, expected);
    if s.status != Status::InProgress {
        assert_eq!(s.turn, Turn::Done);
        assert!(s.legal.is_empty());
    }
}

#[tokio::test]
async fn fresh_c5_session() {
    let app = router(ServiceConfig::default());
    let s = create(&app, json!({"graph": "C5", "k": 3, "human": "ann", "engine": "optimal"})).await;
    assert_eq!(s.status, Status::InProgress);
    assert_eq!(s.turn, Turn::Human);
    assert_eq!((s.n, s.k, s.edges.len()), (5, 3, 5));
    assert!(s.colors.iter().all(Option::is_none));
    assert!(s.history.is_empty());
    assert_eq!(s.legal, vec![0, 1, 2, 3, 4]);
    check_snapshot(&s);

    let (status, v) = call(&app, "GET", &format!("/sessions/{}", s.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(serde_json::from_value::<Snapshot>(v).unwrap(), s);
}

#[tokio::test]
async fn graph6_and_json_graphs_accepted() {
    let app = router(ServiceConfig::default());
    // C5 in graph6
    let s = create(&app, json!({"graph": "Dhc", "k": 3, "human": "ann", "engine": "optimal"})).await;
    assert_eq!(s.edges.len(), 5);
    let g = json!({"n": 3, "edges": [[0, 1], [1, 2]]});
    let s = create(&app, json!({"graph": g, "k": 2, "human": "ann", "engine": "heuristic:7"})).await;
    assert_eq!(s.engine, "heuristic:7");
}

#[tokio::test]
async fn bad_creation_requests() {
    let app = router(ServiceConfig::default());
    let bad = [
        json!({"graph": "C5", "k": 0, "human": "ann", "engine": "optimal"}),
        json!({"graph": "C5", "k": 3, "human": "ann", "engine": "nonsense"}),
        json!({"graph": "C5", "k": 3, "human": "ann", "engine": "degeneracy"}),
        json!({"graph": "C5", "k": 3, "human": "ben", "engine": "product-col"}),
        json!({"graph": "not a graph!", "k": 3, "human": "ann", "engine": "optimal"}),
        json!({"graph": "P13", "k": 3, "human": "ann", "engine": "optimal"}),
        json!({"graph": "C5", "k": 3, "human": "carol", "engine": "optimal"}),
    ];
    for body in bad {
        let (status, v) = call(&app, "POST", "/sessions", Some(body.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body} -> {v}");
        assert!(v["error"].is_string());
    }
}

#[tokio::test]
async fn engine_presents_first_when_human_is_ben() {
    let app = router(ServiceConfig::default());
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ben", "engine": "degeneracy"})).await;
    assert_eq!(s.status, Status::InProgress);
    assert_eq!(s.turn, Turn::Human);
    let v = s.presented.expect("engine presented a vertex");
    assert_eq!(s.legal, vec![1, 2]);
    assert!(s.history.is_empty());

    let s = ok_move(&app, &s.id, json!({"color": 1})).await;
    assert_eq!(s.colors[v], Some(1));
    assert_eq!(s.history.len(), 1);
    assert!(s.presented.is_some());
    check_snapshot(&s);
}

#[tokio::test]
async fn center_first_wins_for_ann() {
    let app = router(ServiceConfig::default());
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    let s = ok_move(&app, &s.id, json!({"vertex": 1})).await;
    assert!(s.colors[1].is_some());
    assert_eq!(s.status, Status::InProgress);
    check_snapshot(&s);
    let s = ok_move(&app, &s.id, json!({"vertex": 0})).await;
    check_snapshot(&s);
    let s = ok_move(&app, &s.id, json!({"vertex": 2})).await;
    check_snapshot(&s);
    assert_eq!(s.status, Status::AnnWon);
    assert_eq!(s.history.len(), 3);
    assert!(s.legal.is_empty());
}

#[tokio::test]
async fn leaves_first_loses_to_optimal_ben() {
    let app = router(ServiceConfig::default());
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    let s = ok_move(&app, &s.id, json!({"vertex": 0})).await;
    assert_eq!(s.status, Status::InProgress);
    let s = ok_move(&app, &s.id, json!({"vertex": 2})).await;
    check_snapshot(&s);
    assert_eq!(s.status, Status::BenWon);
    assert_eq!(s.blocked, vec![1]);
    assert_eq!(s.turn, Turn::Done);
    assert!(s.legal.is_empty());

    let (status, _) = post_move(&app, &s.id, json!({"vertex": 1})).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn illegal_moves_leave_state_unchanged() {
    let app = router(ServiceConfig::default());
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ben", "engine": "degeneracy"})).await;
    for body in [json!({"color": 3}), json!({"color": 0}), json!({"vertex": 0}), json!({"color": 1, "seq": 5})] {
        let (status, v) = post_move(&app, &s.id, body.clone()).await;
        assert_eq!(status, StatusCode::CONFLICT, "{body} -> {v}");
        assert!(v["error"].as_str().is_some_and(|e| !e.is_empty()));
    }
    let (status, _) = post_move(&app, &s.id, json!({"color": 1, "vertex": 0})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post_move(&app, &s.id, json!({"colour": 1})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (_, v) = call(&app, "GET", &format!("/sessions/{}", s.id), None).await;
    assert_eq!(serde_json::from_value::<Snapshot>(v).unwrap(), s);

    // a neighbour's colour is refused too
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    let s = ok_move(&app, &s.id, json!({"vertex": 1, "seq": 0})).await;
    for body in [json!({"vertex": 1}), json!({"vertex": 9}), json!({"color": 1})] {
        let (status, _) = post_move(&app, &s.id, body).await;
        assert_eq!(status, StatusCode::CONFLICT);
    }
}

#[tokio::test]
async fn unknown_session_is_404() {
    let app = router(ServiceConfig::default());
    let (status, _) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = post_move(&app, "nope", json!({"vertex": 0})).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn sessions_are_isolated() {
    let app = router(ServiceConfig::default());
    let a = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    let b = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    assert_ne!(a.id, b.id);
    ok_move(&app, &a.id, json!({"vertex": 1})).await;
    ok_move(&app, &b.id, json!({"vertex": 0})).await;
    ok_move(&app, &a.id, json!({"vertex": 0})).await;
    let b = ok_move(&app, &b.id, json!({"vertex": 2})).await;
    let a = ok_move(&app, &a.id, json!({"vertex": 2})).await;
    assert_eq!(a.status, Status::AnnWon);
    assert_eq!(b.status, Status::BenWon);
}

#[tokio::test]
async fn concurrent_games_on_distinct_sessions() {
    let app = router(ServiceConfig::default());
    let mut handles = Vec::new();
    for i in 0..8 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let s = create(&app, json!({"graph": "C5", "k": 3, "human": "ann", "engine": "optimal"})).await;
            let mut s = s;
            for v in 0..5 {
                if s.status != Status::InProgress {
                    break;
                }
                s = ok_move(&app, &s.id, json!({"vertex": (v + i) % 5})).await;
                check_snapshot(&s);
            }
            s
        }));
    }
    for h in handles {
        let s = h.await.unwrap();
        assert_ne!(s.status, Status::InProgress);
    }
}

#[tokio::test]
async fn idle_sessions_are_evicted() {
    let state = Arc::new(AppState::new(ServiceConfig { idle: Duration::from_millis(50), ..Default::default() }));
    let app = router_with_state(state.clone());
    let s = create(&app, json!({"graph": "P3", "k": 2, "human": "ann", "engine": "optimal"})).await;
    assert_eq!(state.session_count(), 1);
    tokio::time::sleep(Duration::from_millis(120)).await;
    let (status, _) = call(&app, "GET", &format!("/sessions/{}", s.id), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(state.session_count(), 0);
}

#[tokio::test]
async fn product_engine_with_factors() {
    let app = router(ServiceConfig::default());
    let body = json!({"graph": "P2[P2]", "k": 4, "human": "ben", "engine": "product-col", "factors": ["P2", "P2"]});
    let mut s = create(&app, body).await;
    while s.status == Status::InProgress {
        let c = s.legal[s.legal.len() - 1];
        s = ok_move(&app, &s.id, json!({"color": c})).await;
        check_snapshot(&s);
    }
    assert_eq!(s.status, Status::AnnWon);
}
