//! Standard-library companion to `focal-core`: project loading, the LLM
//! gateway with mock and HTTP backends, the evaluation harness, and the
//! TOML configuration surface the CLI exposes.

pub mod config;
pub mod eval;
pub mod gateway;
pub mod walk;

/// Method signatures for well-known library classes, consulted when a call
/// resolves to a class outside the parsed project.
pub const BUILTIN_SIGNATURES: &str = include_str!("../data/builtin-signatures.txt");

/// Parses the bundled signature table. The bundled text is validated by a
/// unit test, so failure here means a corrupted build.
pub fn builtin_table() -> anyhow::Result<focal_core::signature::SignatureTable> {
    focal_core::signature::SignatureTable::parse(BUILTIN_SIGNATURES)
        .map_err(|e| anyhow::anyhow!("bundled signature table line {}: {}", e.line, e.message))
}

/// Lowercase hex SHA-256 of a byte string; the content address used for
/// replay keys and response blobs.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_signature_table_parses_and_keeps_singleton_keys() {
        let table = builtin_table().unwrap();
        assert!(table.len() > 40);

        // Exactly one candidate per (class, method, arity), except the
        // List.remove pair kept as a live ambiguity example.
        let mut seen = std::collections::BTreeMap::new();
        for line in BUILTIN_SIGNATURES.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let sig = focal_core::signature::MethodSignature::parse(line).unwrap();
            let key =
                (sig.declaring_class.clone(), sig.name.clone(), sig.parameter_types.len());
            *seen.entry(key).or_insert(0usize) += 1;
        }
        for ((class, name, arity), count) in seen {
            if class == "java.util.List" && name == "remove" && arity == 1 {
                assert_eq!(count, 2);
            } else {
                assert_eq!(count, 1, "{class}.{name}/{arity} duplicated");
            }
        }
    }

    #[test]
    fn sha256_matches_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
