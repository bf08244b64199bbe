#![cfg(feature = "http")]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::thread;
use std::time::Duration;

use cowrite_core::assistant::{AssistantError, GenerationBackend, HttpBackend};

/// Reads one HTTP request and returns its body and headers.
fn read_request(stream: &mut TcpStream) -> (String, Vec<String>) {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut headers = Vec::new();
    let mut length = 0;
    loop {
        let mut line = String::new();
        reader.read_line(&mut line).unwrap();
        let line = line.trim_end().to_string();
        if line.is_empty() {
            break;
        }
        if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
            length = v.trim().parse().unwrap();
        }
        headers.push(line);
    }
    let mut body = vec![0; length];
    reader.read_exact(&mut body).unwrap();
    (String::from_utf8(body).unwrap(), headers)
}

fn respond(stream: &mut TcpStream, status: &str, body: &str) {
    write!(
        stream,
        "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
}

#[test]
fn posts_prompt_and_reads_text() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/generate", listener.local_addr().unwrap());
    let server = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let (body, headers) = read_request(&mut stream);
        respond(
            &mut stream,
            "200 OK",
            r#"{"text": "1. A? 2. B? 3. C? 4. D?"}"#,
        );
        (body, headers)
    });
    let backend = HttpBackend::new(url, Some("secret".into()), Duration::from_secs(5));
    let text = backend.generate("hello").unwrap();
    assert_eq!(text, "1. A? 2. B? 3. C? 4. D?");
    let (body, headers) = server.join().unwrap();
    let sent: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(sent, serde_json::json!({ "prompt": "hello" }));
    assert!(headers
        .iter()
        .any(|h| h == "authorization: Bearer secret" || h == "Authorization: Bearer secret"));
}

#[test]
fn retries_once_after_a_failure() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/", listener.local_addr().unwrap());
    let server = thread::spawn(move || {
        for reply in ["503 Service Unavailable", "200 OK"] {
            let (mut stream, _) = listener.accept().unwrap();
            read_request(&mut stream);
            respond(&mut stream, reply, r#"{"text": "ok"}"#);
        }
    });
    let backend = HttpBackend::new(url, None, Duration::from_secs(5));
    assert_eq!(backend.generate("p").unwrap(), "ok");
    server.join().unwrap();
}

#[test]
fn unreachable_endpoint_is_unavailable() {
    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let backend = HttpBackend::new(
        format!("http://127.0.0.1:{port}/"),
        None,
        Duration::from_secs(2),
    );
    assert!(matches!(
        backend.generate("p"),
        Err(AssistantError::BackendUnavailable(_))
    ));
}

#[test]
fn silent_server_times_out() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/", listener.local_addr().unwrap());
    let server = thread::spawn(move || {
        let mut held = Vec::new();
        for _ in 0..2 {
            let (stream, _) = listener.accept().unwrap();
            held.push(stream);
        }
        thread::sleep(Duration::from_millis(800));
    });
    let backend = HttpBackend::new(url, None, Duration::from_millis(200));
    assert!(matches!(
        backend.generate("p"),
        Err(AssistantError::BackendTimeout(_))
    ));
    server.join().unwrap();
}

#[test]
fn empty_prompt_is_rejected_without_a_call() {
    let backend = HttpBackend::new("http://127.0.0.1:9/", None, Duration::from_secs(1));
    assert_eq!(backend.generate("  "), Err(AssistantError::EmptyPrompt));
}
