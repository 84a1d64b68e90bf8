//! TOML configuration file shared by `generate` and `evaluate`. Every key
//! is optional in the file; command-line flags override file values and
//! built-in defaults fill the rest. Secrets never live here: HTTP backends
//! name an environment variable instead.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::gateway::GenerationConfig;

/// Backend selection and its transport knobs. `kind` picks one of the
/// registered backends: `echo`, `contextual`, `replay`, or `http`.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct BackendConfig {
    pub kind: Option<String>,
    /// Contextual mock: prompts above this token count are echoed back,
    /// prompts at or below it get a synthesized test class. Defaults to
    /// `decoding.max_input_tokens`.
    pub threshold_tokens: Option<usize>,
    /// Replay backend: line-delimited JSON of prompt hash and response.
    pub replay_file: Option<String>,
    /// HTTP backend: chat-completion endpoint URL.
    pub url: Option<String>,
    /// Name of the environment variable holding the API key.
    pub auth_env: Option<String>,
    /// Header carrying the key; `Authorization` sends `Bearer <key>`.
    pub auth_header: Option<String>,
    /// Which end of an over-budget prompt survives: `tail` or `head`.
    pub truncation: Option<String>,
    /// Maximum simultaneous requests to the backend.
    pub in_flight_cap: Option<usize>,
}

/// On-disk configuration. Field names are the documented key set; unknown
/// keys are rejected so typos surface as config errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub project: Option<String>,
    pub corpus: Option<String>,
    pub strategies: Option<Vec<String>>,
    pub output_dir: Option<String>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub tokenizer_scheme: Option<String>,
    pub regurgitation_threshold: Option<f64>,
    /// Directory names skipped while discovering source files.
    pub ignore: Option<Vec<String>>,
    pub decoding: Option<GenerationConfig>,
    pub backend: Option<BackendConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config `{}`", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config `{}`", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_decoding_contract() {
        let d = GenerationConfig::default();
        assert_eq!(d.max_input_tokens, 1023);
        assert_eq!(d.context_length, 4096);
        assert_eq!(d.temperature, 0.0);
        assert_eq!(d.top_k, 50);
        assert_eq!(d.top_p, 0.95);
    }

    #[test]
    fn partial_file_fills_defaults() {
        let cfg: FileConfig = toml::from_str(
            "project = \"fixtures/guava\"\n[decoding]\ntemperature = 0.2\n",
        )
        .unwrap();
        assert_eq!(cfg.project.as_deref(), Some("fixtures/guava"));
        let d = cfg.decoding.unwrap();
        assert_eq!(d.temperature, 0.2);
        assert_eq!(d.max_input_tokens, 1023);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<FileConfig>("projcet = \"x\"\n").unwrap_err();
        assert!(err.to_string().contains("projcet"));
    }
}
