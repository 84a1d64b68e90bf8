//! Property tests for the total parsing surface, the tokenizer's budget
//! arithmetic, and the signature grammar round-trip.

use focal_core::parser::parse_unit_lenient;
use focal_core::signature::MethodSignature;
use focal_core::tokenizer::{count_tokens, truncate_head, truncate_tail};
use proptest::prelude::*;

/// Text that looks vaguely like source code: identifiers, punctuation,
/// braces, strings, comments, and whitespace in arbitrary order.
fn codeish() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[A-Za-z0-9_$.,;:(){}\\[\\]<>+=*/&|!\"'@# \\t\\n-]{0,400}")
        .expect("valid regex")
}

proptest! {
    /// The lenient parser accepts anything without panicking and is a
    /// pure function of its input.
    #[test]
    fn lenient_parse_is_total_and_deterministic(source in codeish()) {
        let first = parse_unit_lenient("fuzz.java", &source);
        let second = parse_unit_lenient("fuzz.java", &source);
        prop_assert_eq!(first.unit, second.unit);
        prop_assert_eq!(first.diagnostics.len(), second.diagnostics.len());
    }

    /// Tail truncation never exceeds the budget, reports `truncated`
    /// exactly when the input was over budget, and returns a suffix.
    #[test]
    fn tail_truncation_respects_budget(text in codeish(), budget in 0usize..300) {
        let total = count_tokens(&text, "approx-llama").unwrap();
        let cut = truncate_tail(&text, budget, "approx-llama").unwrap();
        prop_assert!(cut.token_count <= budget);
        prop_assert_eq!(cut.truncated, total > budget);
        prop_assert!(text.ends_with(cut.text));
        if !cut.truncated {
            prop_assert_eq!(cut.text, text.as_str());
        }
    }

    /// Head truncation mirrors tail truncation with a prefix.
    #[test]
    fn head_truncation_respects_budget(text in codeish(), budget in 0usize..300) {
        let total = count_tokens(&text, "approx-llama").unwrap();
        let cut = truncate_head(&text, budget, "approx-llama").unwrap();
        prop_assert!(cut.token_count <= budget);
        prop_assert_eq!(cut.truncated, total > budget);
        prop_assert!(text.starts_with(cut.text));
    }

    /// Identifier runs cannot merge across a space, so counting is
    /// additive over a single-space join.
    #[test]
    fn token_counts_add_across_a_space(a in codeish(), b in codeish()) {
        let joined = format!("{a} {b}");
        let sum = count_tokens(&a, "approx-llama").unwrap()
            + count_tokens(&b, "approx-llama").unwrap();
        prop_assert_eq!(count_tokens(&joined, "approx-llama").unwrap(), sum);
    }

    /// Any signature assembled from well-formed parts renders to a line
    /// that parses back to the same signature.
    #[test]
    fn signature_render_parse_round_trip(
        ret in "[a-z][a-z0-9]{0,6}",
        class in "[a-z][a-z0-9]{0,5}(\\.[A-Z][a-z0-9]{0,5}){1,3}",
        name in "[a-z][A-Za-z0-9]{0,8}",
        params in proptest::collection::vec("[a-z][a-z0-9.]{0,10}[a-z0-9]", 0..4),
    ) {
        let sig = MethodSignature {
            return_type: focal_core::model::TypeName::new(ret),
            declaring_class: class,
            name,
            parameter_types: params.into_iter().map(focal_core::model::TypeName::new).collect(),
        };
        let rendered = sig.render();
        let parsed = MethodSignature::parse(&rendered).unwrap();
        prop_assert_eq!(parsed, sig);
    }
}
