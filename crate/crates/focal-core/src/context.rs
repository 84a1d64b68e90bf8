//! Focal-context extraction: given a method reference, collect the dedented
//! method source, the declaring class, the resolved signatures of every
//! call inside the method, and declared-type facts for the fields it uses.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{ClassDecl, CompilationUnit, MethodDecl, SpanError};
use crate::resolver::{
    resolve_call, resolve_field, FieldResolution, ProjectIndex, ResolutionOutcome,
};

/// Addresses one method in a project: unit path, qualified class name,
/// method name, and arity. Arity breaks overload ties; a tie that survives
/// it is an error rather than a guess.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FocalMethodRef {
    pub unit_path: String,
    pub class_qualified_name: String,
    pub method_name: String,
    pub arity: usize,
}

impl fmt::Display for FocalMethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}#{}/{} ({})",
            self.class_qualified_name, self.method_name, self.arity, self.unit_path
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStats {
    pub resolved: usize,
    pub ambiguous: usize,
    pub unresolved: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocalContext {
    /// Dedented span text of the focal method, declaration through closing
    /// brace.
    pub focal_source: String,
    /// Simple name of the declaring class.
    pub declaring_class: String,
    /// Rendered signatures of calls within the method, deduplicated and
    /// lexicographically sorted. Ambiguous sites contribute every candidate;
    /// unresolved sites contribute `UNRESOLVED <name>/<arity>` markers.
    pub invoked_signatures: Vec<String>,
    /// `name : declared-type` facts for fields of the focal class the
    /// method reads or writes, deduplicated and sorted.
    pub field_facts: Vec<String>,
    /// Per-site tallies; the three buckets sum to the call-site count.
    pub resolution_stats: ResolutionStats,
}

impl FocalContext {
    /// Canonical plain-text rendering, the exact block the prompt embeds.
    /// Section headers are always present, even over empty lists.
    pub fn render(&self) -> String {
        let mut lines: Vec<&str> = Vec::new();
        lines.push("FOCAL-METHOD-BEGIN");
        lines.push(&self.focal_source);
        lines.push("FOCAL-METHOD-END");
        lines.push("Declaring-Class-of-Method:");
        lines.push(&self.declaring_class);
        lines.push("SIGNATURES-OF-METHOD-CALLS-WITHIN-FOCAL-METHOD:");
        for sig in &self.invoked_signatures {
            lines.push(sig);
        }
        lines.push("FIELDS-USED-WITHIN-FOCAL-METHOD:");
        for fact in &self.field_facts {
            lines.push(fact);
        }
        lines.join("\n")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextError {
    UnitNotFound { unit_path: String },
    ClassNotFound { unit_path: String, class: String },
    MethodNotFound { class: String, method: String, arity: usize },
    /// Several same-name same-arity overloads match the reference.
    MethodAmbiguous { class: String, method: String, arity: usize, candidates: Vec<String> },
    Span(SpanError),
}

impl fmt::Display for ContextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextError::UnitNotFound { unit_path } => {
                write!(f, "no parsed unit at `{unit_path}`")
            }
            ContextError::ClassNotFound { unit_path, class } => {
                write!(f, "no class `{class}` in `{unit_path}`")
            }
            ContextError::MethodNotFound { class, method, arity } => {
                write!(f, "no method `{method}` with arity {arity} in `{class}`")
            }
            ContextError::MethodAmbiguous { class, method, arity, candidates } => write!(
                f,
                "method `{method}` with arity {arity} is ambiguous in `{class}`: {}",
                candidates.join(" | ")
            ),
            ContextError::Span(e) => write!(f, "focal span: {e}"),
        }
    }
}

impl core::error::Error for ContextError {}

/// Locates the unit, class, and method a reference names.
pub fn find_focal<'a>(
    index: &ProjectIndex<'a>,
    focal: &FocalMethodRef,
) -> Result<(&'a CompilationUnit, &'a ClassDecl, &'a MethodDecl), ContextError> {
    let unit = index
        .find_unit(&focal.unit_path)
        .ok_or_else(|| ContextError::UnitNotFound { unit_path: focal.unit_path.clone() })?;
    let class = unit.find_class(&focal.class_qualified_name).ok_or_else(|| {
        ContextError::ClassNotFound {
            unit_path: focal.unit_path.clone(),
            class: focal.class_qualified_name.clone(),
        }
    })?;
    let matches: Vec<&MethodDecl> = class
        .methods
        .iter()
        .filter(|m| m.name == focal.method_name && m.arity() == focal.arity)
        .collect();
    match matches.len() {
        0 => Err(ContextError::MethodNotFound {
            class: focal.class_qualified_name.clone(),
            method: focal.method_name.clone(),
            arity: focal.arity,
        }),
        1 => Ok((unit, class, matches[0])),
        _ => Err(ContextError::MethodAmbiguous {
            class: focal.class_qualified_name.clone(),
            method: focal.method_name.clone(),
            arity: focal.arity,
            candidates: matches
                .iter()
                .map(|m| {
                    let params: Vec<&str> =
                        m.parameters.iter().map(|p| p.declared_type.text.as_str()).collect();
                    format!("{}({})", m.name, params.join(", "))
                })
                .collect(),
        }),
    }
}

/// Removes the first line's leading whitespace from every line. A line
/// that does not share the full prefix loses only the part it shares.
pub fn dedent(text: &str) -> String {
    let first = text.lines().next().unwrap_or("");
    let prefix: &str = &first[..first.len() - first.trim_start().len()];
    let mut out = String::with_capacity(text.len());
    for (i, line) in text.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let mut shared = 0;
        for (pc, lc) in prefix.chars().zip(line.chars()) {
            if pc == lc {
                shared += pc.len_utf8();
            } else {
                break;
            }
        }
        out.push_str(&line[shared..]);
    }
    out
}

pub fn extract_context(
    index: &ProjectIndex<'_>,
    focal: &FocalMethodRef,
) -> Result<FocalContext, ContextError> {
    let (unit, class, method) = find_focal(index, focal)?;

    let span_text = unit.span_text(method.source_span).map_err(ContextError::Span)?;
    let focal_source = dedent(span_text);

    let mut stats = ResolutionStats::default();
    let mut signatures: BTreeSet<String> = BTreeSet::new();
    for site in &method.invocations {
        let resolution = resolve_call(index, unit, class, method, site);
        match resolution.outcome {
            ResolutionOutcome::Resolved => {
                stats.resolved += 1;
                signatures.insert(resolution.candidates[0].render());
            }
            ResolutionOutcome::Ambiguous => {
                stats.ambiguous += 1;
                for c in &resolution.candidates {
                    signatures.insert(c.render());
                }
            }
            ResolutionOutcome::Unresolved => {
                stats.unresolved += 1;
                signatures
                    .insert(format!("UNRESOLVED {}/{}", site.callee_name, site.argument_count));
            }
        }
    }

    let mut facts: BTreeSet<String> = BTreeSet::new();
    for site in &method.field_accesses {
        if let FieldResolution::Field(fact) = resolve_field(index, unit, class, method, site) {
            facts.insert(format!("{} : {}", fact.name, fact.declared_type.text));
        }
    }

    Ok(FocalContext {
        focal_source,
        declaring_class: class.simple_name.clone(),
        invoked_signatures: signatures.into_iter().collect(),
        field_facts: facts.into_iter().collect(),
        resolution_stats: stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_unit;
    use crate::signature::SignatureTable;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    const EMPLOYEE: &str = "\
public class Employee {

    Integer number;
    String email;

    public Employee(Integer number, String email) {
        this.number = number;
        this.email = email;
    }

    public String getEmail() {
        return isEmailUnknown() ? getUnknownEmail(number) : email;
    }

    public boolean isEmailUnknown() {
        return email == null || email.isEmpty();
    }

    static String getUnknownEmail(Integer number) {
        return \"unknown-\" + number;
    }
}
";

    fn employee_units() -> Vec<crate::model::CompilationUnit> {
        vec![parse_unit("Employee.java", EMPLOYEE).unwrap().unit]
    }

    fn employee_ref() -> FocalMethodRef {
        FocalMethodRef {
            unit_path: "Employee.java".into(),
            class_qualified_name: "Employee".into(),
            method_name: "getEmail".into(),
            arity: 0,
        }
    }

    #[test]
    fn get_email_context_is_exact() {
        let units = employee_units();
        let table = SignatureTable::parse("boolean java.lang.String.isEmpty()\n").unwrap();
        let index = ProjectIndex::build(&units, table);
        let ctx = extract_context(&index, &employee_ref()).unwrap();

        assert_eq!(
            ctx.focal_source,
            "public String getEmail() {\n    return isEmailUnknown() ? getUnknownEmail(number) : email;\n}"
        );
        assert_eq!(ctx.declaring_class, "Employee");
        assert_eq!(
            ctx.invoked_signatures,
            vec![
                "boolean Employee.isEmailUnknown()".to_string(),
                "java.lang.String Employee.getUnknownEmail(java.lang.Integer)".to_string(),
            ]
        );
        assert_eq!(
            ctx.field_facts,
            vec!["email : java.lang.String".to_string(), "number : java.lang.Integer".to_string()]
        );
        assert_eq!(ctx.resolution_stats, ResolutionStats { resolved: 2, ambiguous: 0, unresolved: 0 });
    }

    #[test]
    fn render_keeps_headers_over_empty_sections() {
        let ctx = FocalContext {
            focal_source: "int id() {\n    return 7;\n}".into(),
            declaring_class: "Thing".into(),
            invoked_signatures: vec![],
            field_facts: vec![],
            resolution_stats: ResolutionStats::default(),
        };
        assert_eq!(
            ctx.render(),
            "FOCAL-METHOD-BEGIN\n\
             int id() {\n    return 7;\n}\n\
             FOCAL-METHOD-END\n\
             Declaring-Class-of-Method:\n\
             Thing\n\
             SIGNATURES-OF-METHOD-CALLS-WITHIN-FOCAL-METHOD:\n\
             FIELDS-USED-WITHIN-FOCAL-METHOD:"
        );
    }

    #[test]
    fn stats_buckets_sum_to_call_site_count() {
        let units = vec![parse_unit(
            "A.java",
            "class A {\n\
             void f(java.util.List<String> xs) {\n\
             xs.remove(0);\n\
             ghost(1);\n\
             own();\n\
             }\n\
             void own() { }\n\
             }",
        )
        .unwrap()
        .unit];
        let table = SignatureTable::parse(
            "java.lang.Object java.util.List.remove(int)\nboolean java.util.List.remove(java.lang.Object)\n",
        )
        .unwrap();
        let index = ProjectIndex::build(&units, table);
        let ctx = extract_context(
            &index,
            &FocalMethodRef {
                unit_path: "A.java".into(),
                class_qualified_name: "A".into(),
                method_name: "f".into(),
                arity: 1,
            },
        )
        .unwrap();
        let s = ctx.resolution_stats;
        assert_eq!((s.resolved, s.ambiguous, s.unresolved), (1, 1, 1));
        let unit = index.find_unit("A.java").unwrap();
        let m = &unit.types[0].methods[0];
        assert_eq!(s.resolved + s.ambiguous + s.unresolved, m.invocations.len());
        assert!(ctx.invoked_signatures.contains(&"UNRESOLVED ghost/1".to_string()));
        // Both ambiguous candidates are listed.
        assert!(ctx
            .invoked_signatures
            .contains(&"boolean java.util.List.remove(java.lang.Object)".to_string()));
        assert!(ctx
            .invoked_signatures
            .contains(&"java.lang.Object java.util.List.remove(int)".to_string()));
    }

    #[test]
    fn signatures_are_deduplicated_and_sorted() {
        let units = vec![parse_unit(
            "A.java",
            "class A { void f() { b(); a(); b(); } void a() { } void b() { } }",
        )
        .unwrap()
        .unit];
        let index = ProjectIndex::build(&units, SignatureTable::default());
        let ctx = extract_context(
            &index,
            &FocalMethodRef {
                unit_path: "A.java".into(),
                class_qualified_name: "A".into(),
                method_name: "f".into(),
                arity: 0,
            },
        )
        .unwrap();
        assert_eq!(ctx.invoked_signatures, vec!["void A.a()".to_string(), "void A.b()".to_string()]);
        assert_eq!(ctx.resolution_stats.resolved, 3);
    }

    #[test]
    fn ambiguous_reference_is_an_error_listing_candidates() {
        let units = vec![parse_unit(
            "A.java",
            "class A { int scale(int v) { return v; } long scale(long v) { return v; } }",
        )
        .unwrap()
        .unit];
        let index = ProjectIndex::build(&units, SignatureTable::default());
        let err = extract_context(
            &index,
            &FocalMethodRef {
                unit_path: "A.java".into(),
                class_qualified_name: "A".into(),
                method_name: "scale".into(),
                arity: 1,
            },
        )
        .unwrap_err();
        match err {
            ContextError::MethodAmbiguous { candidates, .. } => {
                assert_eq!(candidates, vec!["scale(int)".to_string(), "scale(long)".to_string()]);
            }
            other => panic!("expected ambiguity, got {other}"),
        }
    }

    #[test]
    fn missing_targets_error_cleanly() {
        let units = employee_units();
        let index = ProjectIndex::build(&units, SignatureTable::default());
        let mut r = employee_ref();
        r.method_name = "nope".into();
        assert!(matches!(extract_context(&index, &r), Err(ContextError::MethodNotFound { .. })));
        let mut r = employee_ref();
        r.class_qualified_name = "Ghost".into();
        assert!(matches!(extract_context(&index, &r), Err(ContextError::ClassNotFound { .. })));
        let mut r = employee_ref();
        r.unit_path = "Ghost.java".into();
        assert!(matches!(extract_context(&index, &r), Err(ContextError::UnitNotFound { .. })));
    }

    #[test]
    fn dedent_strips_shared_prefix_only() {
        assert_eq!(dedent("    a {\n        b;\n    }"), "a {\n    b;\n}");
        assert_eq!(dedent("\tx\n\t\ty\n\tz"), "x\n\ty\nz");
        assert_eq!(dedent("  a\n\n  b"), "a\n\nb");
        // A line outside the prefix loses only what it shares.
        assert_eq!(dedent("    a\n  b"), "a\nb");
        assert_eq!(dedent("plain"), "plain");
    }
}
