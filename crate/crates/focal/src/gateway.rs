//! Completion gateway: applies the input-token budget, hashes the outgoing
//! text, dispatches to a registered backend, and reports timing. Backends
//! are pluggable; the bundled mocks are deterministic so whole evaluation
//! runs can be reproduced bit-for-bit offline.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use focal_core::prompt::PromptArtifact;
use focal_core::tokenizer::{self, truncate_head, truncate_tail};
use serde::{Deserialize, Serialize};

/// Decoding parameters for one completion request.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GenerationConfig {
    pub max_input_tokens: usize,
    pub context_length: usize,
    pub temperature: f64,
    pub top_k: u32,
    pub top_p: f64,
    pub model_id: String,
    pub request_timeout_secs: u64,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            max_input_tokens: 1023,
            context_length: 4096,
            temperature: 0.0,
            top_k: 50,
            top_p: 0.95,
            model_id: "default".to_string(),
            request_timeout_secs: 60,
        }
    }
}

impl GenerationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.temperature >= 0.0) {
            bail!("temperature must be >= 0, got {}", self.temperature);
        }
        if !(self.top_p > 0.0 && self.top_p <= 1.0) {
            bail!("top_p must be in (0, 1], got {}", self.top_p);
        }
        if self.max_input_tokens >= self.context_length {
            bail!(
                "max_input_tokens ({}) must be below context_length ({})",
                self.max_input_tokens,
                self.context_length
            );
        }
        Ok(())
    }
}

/// Outcome of one completion. Exactly one of `raw_text` and `error` is
/// set; latency is reported either way.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompletionResult {
    pub raw_text: Option<String>,
    pub latency_secs: f64,
    pub backend_id: String,
    pub truncated_input: bool,
    pub error: Option<String>,
}

/// What a backend sees: the exact text to send (already within budget),
/// the pre-truncation token count, and the content hash of `text`.
#[derive(Debug)]
pub struct BackendRequest<'a> {
    pub text: &'a str,
    pub original_token_count: usize,
    pub sha256: &'a str,
    pub cfg: &'a GenerationConfig,
}

#[derive(Debug)]
pub struct BackendError {
    pub message: String,
    /// Transport-level failures are retried; everything else is final.
    pub transient: bool,
}

#[derive(Debug)]
pub struct BackendReply {
    pub raw_text: String,
    /// Mocks report a fixed latency so identical runs stay byte-identical;
    /// when absent the gateway uses wall-clock time.
    pub reported_latency_secs: Option<f64>,
}

pub trait Backend: Send + Sync {
    fn id(&self) -> &str;
    fn complete(&self, req: &BackendRequest<'_>) -> Result<BackendReply, BackendError>;
}

/// Returns the received text verbatim.
pub struct EchoBackend;

impl Backend for EchoBackend {
    fn id(&self) -> &str {
        "echo"
    }

    fn complete(&self, req: &BackendRequest<'_>) -> Result<BackendReply, BackendError> {
        Ok(BackendReply { raw_text: req.text.to_string(), reported_latency_secs: Some(0.0) })
    }
}

/// Deterministic stand-in for the observed model behavior: prompts whose
/// pre-truncation token count exceeds the threshold are echoed back (the
/// budgeted tail), smaller prompts get a minimal test class naming the
/// focal class found in the prompt.
pub struct ContextualMockBackend {
    pub threshold_tokens: usize,
}

impl ContextualMockBackend {
    fn focal_class_name(text: &str) -> Option<String> {
        let mut lines = text.lines();
        while let Some(line) = lines.next() {
            if line.trim() == "Declaring-Class-of-Method:" {
                return lines.next().map(|l| l.trim().to_string());
            }
        }
        // Code-completion framing: the opened test-file header names the
        // class under test.
        for line in text.lines() {
            if let Some(rest) = line.trim().strip_prefix("public class ") {
                if let Some(name) = rest.split_whitespace().next() {
                    if let Some(base) = name.strip_suffix("1Test") {
                        if !base.is_empty() {
                            return Some(base.to_string());
                        }
                    }
                }
            }
        }
        None
    }
}

impl Backend for ContextualMockBackend {
    fn id(&self) -> &str {
        "contextual"
    }

    fn complete(&self, req: &BackendRequest<'_>) -> Result<BackendReply, BackendError> {
        let raw_text = if req.original_token_count > self.threshold_tokens {
            req.text.to_string()
        } else {
            let class = Self::focal_class_name(req.text).unwrap_or_else(|| "Focal".to_string());
            format!(
                "Here is a unit test for {class}.\n\n```java\nimport org.junit.jupiter.api.Test;\nimport static org.junit.jupiter.api.Assertions.*;\n\npublic class {class}Test {{\n\n    @Test\n    public void focalClassIsCovered() {{\n        assertNotNull({class}.class);\n    }}\n}}\n```\n"
            )
        };
        Ok(BackendReply { raw_text, reported_latency_secs: Some(0.0) })
    }
}

/// One line of a replay file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplayRecord {
    /// SHA-256 of the exact prompt text sent to the backend.
    pub sha256: String,
    pub response: String,
}

/// Serves recorded responses keyed by prompt hash. Missing prompts are a
/// final (non-transient) error so evaluation records the gap instead of
/// inventing output.
pub struct ReplayBackend {
    responses: BTreeMap<String, String>,
}

impl ReplayBackend {
    pub fn from_file(path: &Path) -> Result<ReplayBackend> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading replay file `{}`", path.display()))?;
        let mut responses = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: ReplayRecord = serde_json::from_str(line)
                .with_context(|| format!("replay file `{}` line {}", path.display(), i + 1))?;
            responses.insert(record.sha256, record.response);
        }
        Ok(ReplayBackend { responses })
    }

    pub fn write_file(path: &Path, records: &[ReplayRecord]) -> Result<()> {
        let mut text = String::new();
        for record in records {
            text.push_str(&serde_json::to_string(record)?);
            text.push('\n');
        }
        std::fs::write(path, text)
            .with_context(|| format!("writing replay file `{}`", path.display()))
    }
}

impl Backend for ReplayBackend {
    fn id(&self) -> &str {
        "replay"
    }

    fn complete(&self, req: &BackendRequest<'_>) -> Result<BackendReply, BackendError> {
        match self.responses.get(req.sha256) {
            Some(response) => Ok(BackendReply {
                raw_text: response.clone(),
                reported_latency_secs: Some(0.0),
            }),
            None => Err(BackendError {
                message: format!("no recorded response for prompt sha256={}", req.sha256),
                transient: false,
            }),
        }
    }
}

/// Chat-completion HTTP backend. The prompt template's system block is
/// sent as the system message and the remainder as the user message; a
/// truncated prompt that lost its markers travels whole as the user turn.
pub struct HttpBackend {
    url: String,
    auth: Option<(String, String)>,
    client: reqwest::blocking::Client,
}

impl HttpBackend {
    /// `auth_env` names the environment variable holding the key; a named
    /// but unset variable is a configuration error, not a request error.
    pub fn new(url: &str, auth_env: Option<&str>, auth_header: Option<&str>) -> Result<HttpBackend> {
        let auth = match auth_env {
            Some(var) => {
                let key = std::env::var(var)
                    .map_err(|_| anyhow!("backend.auth_env names `{var}`, which is not set"))?;
                let header = auth_header.unwrap_or("Authorization").to_string();
                let value =
                    if header == "Authorization" { format!("Bearer {key}") } else { key };
                Some((header, value))
            }
            None => None,
        };
        Ok(HttpBackend {
            url: url.to_string(),
            auth,
            client: reqwest::blocking::Client::new(),
        })
    }
}

/// Splits a templated prompt into (system, user) chat messages.
pub fn split_messages(text: &str) -> (Option<&str>, &str) {
    if let Some(sys_start) = text.find("<<SYS>>\n") {
        let after = &text[sys_start + "<<SYS>>\n".len()..];
        if let Some(end) = after.find("\n<</SYS>>\n") {
            let system = &after[..end];
            let user = &after[end + "\n<</SYS>>\n".len()..];
            return (Some(system), user.strip_suffix("\n[/INST]").unwrap_or(user));
        }
    }
    let user = text.strip_prefix("[INST]\n").unwrap_or(text);
    (None, user.strip_suffix("\n[/INST]").unwrap_or(user))
}

impl Backend for HttpBackend {
    fn id(&self) -> &str {
        "http"
    }

    fn complete(&self, req: &BackendRequest<'_>) -> Result<BackendReply, BackendError> {
        let (system, user) = split_messages(req.text);
        let mut messages = Vec::new();
        if let Some(system) = system {
            messages.push(serde_json::json!({"role": "system", "content": system}));
        }
        messages.push(serde_json::json!({"role": "user", "content": user}));
        let body = serde_json::json!({
            "model": req.cfg.model_id,
            "messages": messages,
            "temperature": req.cfg.temperature,
            "top_k": req.cfg.top_k,
            "top_p": req.cfg.top_p,
            "max_tokens": req.cfg.context_length.saturating_sub(req.cfg.max_input_tokens),
        });

        let mut request = self
            .client
            .post(&self.url)
            .timeout(Duration::from_secs(req.cfg.request_timeout_secs))
            .json(&body);
        if let Some((header, value)) = &self.auth {
            request = request.header(header.as_str(), value.as_str());
        }

        let response = request.send().map_err(|e| BackendError {
            message: format!("transport: {e}"),
            transient: true,
        })?;
        let status = response.status();
        let text = response.text().map_err(|e| BackendError {
            message: format!("reading response body: {e}"),
            transient: true,
        })?;
        if !status.is_success() {
            return Err(BackendError {
                message: format!("HTTP {status}: {}", text.chars().take(200).collect::<String>()),
                transient: status.is_server_error(),
            });
        }
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| BackendError {
            message: format!("malformed response JSON: {e}"),
            transient: false,
        })?;
        let content = value["choices"][0]["message"]["content"]
            .as_str()
            .or_else(|| value["choices"][0]["text"].as_str())
            .ok_or_else(|| BackendError {
                message: "response carries no choices[0] content".to_string(),
                transient: false,
            })?;
        Ok(BackendReply { raw_text: content.to_string(), reported_latency_secs: None })
    }
}

/// Which end of an over-budget prompt survives truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationSide {
    Tail,
    Head,
}

impl FromStr for TruncationSide {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tail" => Ok(TruncationSide::Tail),
            "head" => Ok(TruncationSide::Head),
            other => Err(format!("unknown truncation side `{other}` (known: tail, head)")),
        }
    }
}

/// Counting semaphore bounding in-flight backend calls.
struct Slots {
    free: Mutex<usize>,
    cv: Condvar,
}

struct SlotGuard<'a>(&'a Slots);

impl Slots {
    fn acquire(&self) -> SlotGuard<'_> {
        let mut free = self.free.lock().unwrap();
        while *free == 0 {
            free = self.cv.wait(free).unwrap();
        }
        *free -= 1;
        SlotGuard(self)
    }
}

impl Drop for SlotGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap() += 1;
        self.0.cv.notify_one();
    }
}

const MAX_RETRIES: u32 = 2;

pub struct Gateway {
    backends: BTreeMap<String, Box<dyn Backend>>,
    scheme: String,
    side: TruncationSide,
    slots: Slots,
}

impl Gateway {
    pub fn new(scheme: &str, side: TruncationSide, in_flight_cap: usize) -> Result<Gateway> {
        if !tokenizer::SCHEMES.contains(&scheme) {
            bail!("unknown tokenizer scheme `{scheme}` (known: {})", tokenizer::SCHEMES.join(", "));
        }
        if in_flight_cap == 0 {
            bail!("in_flight_cap must be at least 1");
        }
        Ok(Gateway {
            backends: BTreeMap::new(),
            scheme: scheme.to_string(),
            side,
            slots: Slots { free: Mutex::new(in_flight_cap), cv: Condvar::new() },
        })
    }

    pub fn register(&mut self, backend: Box<dyn Backend>) {
        self.backends.insert(backend.id().to_string(), backend);
    }

    pub fn backend_ids(&self) -> Vec<String> {
        self.backends.keys().cloned().collect()
    }

    /// Budgets, hashes, and dispatches one prompt. Configuration problems
    /// are hard errors; backend failures come back inside the result so a
    /// run can keep going.
    pub fn complete(
        &self,
        prompt: &PromptArtifact,
        cfg: &GenerationConfig,
        backend_id: &str,
    ) -> Result<CompletionResult> {
        cfg.validate()?;
        let backend = self.backends.get(backend_id).ok_or_else(|| {
            anyhow!(
                "unknown backend `{backend_id}` (registered: {})",
                self.backend_ids().join(", ")
            )
        })?;

        let cut = match self.side {
            TruncationSide::Tail => truncate_tail(&prompt.text, cfg.max_input_tokens, &self.scheme)?,
            TruncationSide::Head => truncate_head(&prompt.text, cfg.max_input_tokens, &self.scheme)?,
        };
        let original_token_count = tokenizer::count_tokens(&prompt.text, &self.scheme)?;
        let sha256 = crate::sha256_hex(cut.text.as_bytes());
        let request = BackendRequest {
            text: cut.text,
            original_token_count,
            sha256: &sha256,
            cfg,
        };

        let _slot = self.slots.acquire();
        let started = Instant::now();
        let mut attempt = 0;
        loop {
            let attempt_started = Instant::now();
            match backend.complete(&request) {
                Ok(reply) => {
                    let latency_secs = reply
                        .reported_latency_secs
                        .unwrap_or_else(|| attempt_started.elapsed().as_secs_f64());
                    return Ok(CompletionResult {
                        raw_text: Some(reply.raw_text),
                        latency_secs,
                        backend_id: backend_id.to_string(),
                        truncated_input: cut.truncated,
                        error: None,
                    });
                }
                Err(e) if e.transient && attempt < MAX_RETRIES => {
                    attempt += 1;
                    log::warn!("backend `{backend_id}` transient failure (attempt {attempt}): {}", e.message);
                    std::thread::sleep(Duration::from_secs(1 << (attempt - 1)));
                }
                Err(e) => {
                    return Ok(CompletionResult {
                        raw_text: None,
                        latency_secs: started.elapsed().as_secs_f64(),
                        backend_id: backend_id.to_string(),
                        truncated_input: cut.truncated,
                        error: Some(e.message),
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use focal_core::context::FocalMethodRef;
    use focal_core::prompt::Strategy;
    use focal_core::tokenizer::count_tokens;

    fn artifact(text: &str) -> PromptArtifact {
        PromptArtifact {
            strategy: Strategy::Ours,
            token_count: count_tokens(text, "approx-llama").unwrap(),
            text: text.to_string(),
            focal: FocalMethodRef {
                unit_path: "T.java".into(),
                class_qualified_name: "T".into(),
                method_name: "m".into(),
                arity: 0,
            },
        }
    }

    fn gateway() -> Gateway {
        let mut gw = Gateway::new("approx-llama", TruncationSide::Tail, 1).unwrap();
        gw.register(Box::new(EchoBackend));
        gw.register(Box::new(ContextualMockBackend { threshold_tokens: 1023 }));
        gw
    }

    #[test]
    fn echo_returns_prompt_text_within_budget() {
        let gw = gateway();
        let prompt = artifact("hello world");
        let result = gw.complete(&prompt, &GenerationConfig::default(), "echo").unwrap();
        assert_eq!(result.raw_text.as_deref(), Some("hello world"));
        assert!(!result.truncated_input);
        assert!(result.error.is_none());
    }

    #[test]
    fn over_budget_prompts_are_tail_truncated_to_the_cap() {
        let gw = gateway();
        // 5295 one-token words.
        let text = vec!["w"; 5295].join(" ");
        let prompt = artifact(&text);
        assert_eq!(prompt.token_count, 5295);

        let cfg = GenerationConfig::default();
        let result = gw.complete(&prompt, &cfg, "echo").unwrap();
        assert!(result.truncated_input);
        let sent = result.raw_text.unwrap();
        assert_eq!(count_tokens(&sent, "approx-llama").unwrap(), 1023);
        assert!(text.ends_with(sent.trim_start()));
    }

    #[test]
    fn head_truncation_keeps_the_prefix() {
        let mut gw = Gateway::new("approx-llama", TruncationSide::Head, 1).unwrap();
        gw.register(Box::new(EchoBackend));
        let text = vec!["w"; 40].join(" ");
        let prompt = artifact(&text);
        let cfg = GenerationConfig { max_input_tokens: 10, context_length: 100, ..Default::default() };
        let sent = gw.complete(&prompt, &cfg, "echo").unwrap().raw_text.unwrap();
        assert!(text.starts_with(sent.trim_end()));
        assert_eq!(count_tokens(&sent, "approx-llama").unwrap(), 10);
    }

    #[test]
    fn contextual_mock_regurgitates_above_threshold() {
        let mut gw = Gateway::new("approx-llama", TruncationSide::Tail, 1).unwrap();
        gw.register(Box::new(ContextualMockBackend { threshold_tokens: 0 }));
        let prompt = artifact("any text at all");
        let result = gw.complete(&prompt, &GenerationConfig::default(), "contextual").unwrap();
        assert_eq!(result.raw_text.as_deref(), Some("any text at all"));
    }

    #[test]
    fn contextual_mock_synthesizes_a_test_below_threshold() {
        let gw = gateway();
        let prompt = artifact("[INST]\nDeclaring-Class-of-Method:\nDoubleUtils\n[/INST]");
        let result = gw.complete(&prompt, &GenerationConfig::default(), "contextual").unwrap();
        let reply = result.raw_text.unwrap();
        assert!(reply.contains("@Test"));
        assert!(reply.contains("public class DoubleUtilsTest"));
    }

    #[test]
    fn contextual_mock_reads_baseline_test_headers() {
        let name = ContextualMockBackend::focal_class_name(
            "// Widget.java\nclass Widget {}\n\npublic class Widget1Test {\n[/INST]",
        );
        assert_eq!(name.as_deref(), Some("Widget"));
    }

    #[test]
    fn mock_backends_are_deterministic() {
        let gw = gateway();
        let prompt = artifact("Declaring-Class-of-Method:\nWidget");
        let cfg = GenerationConfig::default();
        let a = gw.complete(&prompt, &cfg, "contextual").unwrap();
        let b = gw.complete(&prompt, &cfg, "contextual").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn replay_hits_by_hash_and_misses_as_final_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("replay.jsonl");
        let hash = crate::sha256_hex(b"known prompt");
        ReplayBackend::write_file(
            &path,
            &[ReplayRecord { sha256: hash, response: "recorded".to_string() }],
        )
        .unwrap();

        let mut gw = Gateway::new("approx-llama", TruncationSide::Tail, 1).unwrap();
        gw.register(Box::new(ReplayBackend::from_file(&path).unwrap()));

        let cfg = GenerationConfig::default();
        let hit = gw.complete(&artifact("known prompt"), &cfg, "replay").unwrap();
        assert_eq!(hit.raw_text.as_deref(), Some("recorded"));

        let miss = gw.complete(&artifact("unknown prompt"), &cfg, "replay").unwrap();
        assert!(miss.raw_text.is_none());
        assert!(miss.error.unwrap().contains("no recorded response"));
        assert!(miss.latency_secs >= 0.0);
    }

    #[test]
    fn config_and_backend_errors_are_hard_errors() {
        let gw = gateway();
        let prompt = artifact("x");
        let bad = GenerationConfig { top_p: 0.0, ..Default::default() };
        assert!(gw.complete(&prompt, &bad, "echo").is_err());
        let inverted =
            GenerationConfig { max_input_tokens: 4096, context_length: 1023, ..Default::default() };
        assert!(gw.complete(&prompt, &inverted, "echo").is_err());
        assert!(gw.complete(&prompt, &GenerationConfig::default(), "nope").is_err());
    }

    #[test]
    fn prompt_template_splits_into_system_and_user() {
        let text = "[INST]\n<<SYS>>\nsystem words\n<</SYS>>\nuser body\n[/INST]";
        let (system, user) = split_messages(text);
        assert_eq!(system, Some("system words"));
        assert_eq!(user, "user body");

        let (none, whole) = split_messages("truncated tail without markers");
        assert!(none.is_none());
        assert_eq!(whole, "truncated tail without markers");
    }
}
