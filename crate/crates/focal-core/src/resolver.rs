//! Call-site and field-access resolution against an indexed project plus a
//! signature table for external classes.
//!
//! Resolution order for a call site:
//! 1. the enclosing class, then its project-visible ancestors;
//! 2. static imports, explicit before wildcard;
//! 3. the receiver's declared type when the receiver is a local, parameter,
//!    or field, then class-name receivers;
//! 4. the signature table for anything typed to an external class.
//!
//! Overloads are disambiguated by arity only. When several candidates
//! survive, all of them are reported in lexicographic render order rather
//! than guessing one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::*;
use crate::signature::{MethodSignature, SignatureTable};

/// Classes importable without any declaration. Simple names in this list
/// qualify to `java.lang.*` when nothing closer matches.
pub const JAVA_LANG_CLASSES: &[&str] = &[
    "Appendable", "ArithmeticException", "AutoCloseable", "Boolean", "Byte", "CharSequence",
    "Character", "Class", "ClassCastException", "Cloneable", "Comparable", "Deprecated",
    "Double", "Enum", "Error", "Exception", "Float", "FunctionalInterface",
    "IllegalArgumentException", "IllegalStateException", "IndexOutOfBoundsException", "Integer",
    "Iterable", "Long", "Math", "NullPointerException", "Number", "NumberFormatException",
    "Object", "Override", "Runnable", "RuntimeException", "SafeVarargs", "Short",
    "StringBuffer", "StringBuilder", "String", "SuppressWarnings", "System", "Thread",
    "Throwable", "UnsupportedOperationException", "Void",
];

/// A class together with the unit that declares it, so supertypes and
/// member types qualify against the right imports.
#[derive(Clone, Copy)]
pub struct ClassRef<'a> {
    pub unit: &'a CompilationUnit,
    pub class: &'a ClassDecl,
}

pub struct ProjectIndex<'a> {
    units: &'a [CompilationUnit],
    by_qualified: BTreeMap<&'a str, ClassRef<'a>>,
    by_simple: BTreeMap<&'a str, Vec<&'a str>>,
    table: SignatureTable,
}

impl<'a> ProjectIndex<'a> {
    /// Indexes every top-level and nested type. When two units declare the
    /// same qualified name the earliest unit wins.
    pub fn build(units: &'a [CompilationUnit], table: SignatureTable) -> Self {
        let mut by_qualified: BTreeMap<&str, ClassRef<'a>> = BTreeMap::new();
        let mut by_simple: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        fn walk<'a>(
            unit: &'a CompilationUnit,
            class: &'a ClassDecl,
            by_qualified: &mut BTreeMap<&'a str, ClassRef<'a>>,
            by_simple: &mut BTreeMap<&'a str, Vec<&'a str>>,
        ) {
            by_qualified
                .entry(class.qualified_name.as_str())
                .or_insert(ClassRef { unit, class });
            let simples = by_simple.entry(class.simple_name.as_str()).or_default();
            if !simples.contains(&class.qualified_name.as_str()) {
                simples.push(class.qualified_name.as_str());
            }
            for nested in &class.nested {
                walk(unit, nested, by_qualified, by_simple);
            }
        }
        for unit in units {
            for class in &unit.types {
                walk(unit, class, &mut by_qualified, &mut by_simple);
            }
        }
        for qualified in by_simple.values_mut() {
            qualified.sort_unstable();
        }
        ProjectIndex { units, by_qualified, by_simple, table }
    }

    pub fn units(&self) -> &'a [CompilationUnit] {
        self.units
    }

    pub fn table(&self) -> &SignatureTable {
        &self.table
    }

    pub fn find_unit(&self, path: &str) -> Option<&'a CompilationUnit> {
        self.units.iter().find(|u| u.path == path)
    }

    pub fn class(&self, qualified: &str) -> Option<ClassRef<'a>> {
        self.by_qualified.get(qualified).copied()
    }

    pub fn classes_for_simple(&self, simple: &str) -> &[&'a str] {
        self.by_simple.get(simple).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Canonicalizes a source type: erases nothing (the parser already erased
/// generics), rewrites the base to a qualified name when one is known, and
/// keeps array suffixes.
pub fn qualify_type(index: &ProjectIndex<'_>, unit: &CompilationUnit, raw: &str) -> TypeName {
    let raw = raw.trim();
    let base_end = raw.find('[').unwrap_or(raw.len());
    let (base, suffix) = raw.split_at(base_end);
    let base = base.trim();
    if base.is_empty() {
        return TypeName::new(raw);
    }
    let qualified = qualify_base(index, unit, base);
    if suffix.is_empty() {
        TypeName::new(qualified)
    } else {
        TypeName::new(format!("{qualified}{suffix}"))
    }
}

fn qualify_base(index: &ProjectIndex<'_>, unit: &CompilationUnit, base: &str) -> String {
    if TypeName::new(base).is_primitive || base == "var" || base.contains('.') {
        return base.to_string();
    }
    if let Some(q) = qualify_simple_class(index, unit, base) {
        return q;
    }
    base.to_string()
}

/// Resolves a simple class name against the unit: same package, explicit
/// imports, wildcard imports, `java.lang`, then a unique signature-table
/// match.
fn qualify_simple_class(index: &ProjectIndex<'_>, unit: &CompilationUnit, simple: &str) -> Option<String> {
    let same_package = if unit.package_name.is_empty() {
        simple.to_string()
    } else {
        format!("{}.{simple}", unit.package_name)
    };
    if index.class(&same_package).is_some() {
        return Some(same_package);
    }
    for import in &unit.imports {
        if !import.is_static && !import.is_wildcard && import.last_segment() == simple {
            return Some(import.path.clone());
        }
    }
    for import in &unit.imports {
        if !import.is_static && import.is_wildcard {
            let candidate = format!("{}.{simple}", import.path);
            if index.class(&candidate).is_some() || index.table().has_class(&candidate) {
                return Some(candidate);
            }
        }
    }
    if JAVA_LANG_CLASSES.contains(&simple) {
        return Some(format!("java.lang.{simple}"));
    }
    let table_matches = index.table().classes_for_simple(simple);
    if table_matches.len() == 1 {
        return Some(table_matches[0].to_string());
    }
    None
}

/// One link in a supertype chain: either a project class or the qualified
/// name of an external one.
enum Ancestor<'a> {
    Project(ClassRef<'a>),
    External(String),
}

/// The class itself followed by its supertypes, breadth-first, `extends`
/// before `implements`, cycles broken by a visited set. External names end
/// their branch since the table is flat.
fn ancestor_chain<'a>(index: &ProjectIndex<'a>, start: ClassRef<'a>) -> Vec<Ancestor<'a>> {
    let mut chain = Vec::new();
    let mut visited: BTreeSet<String> = BTreeSet::new();
    let mut queue: Vec<ClassRef<'a>> = Vec::new();
    visited.insert(start.class.qualified_name.clone());
    chain.push(Ancestor::Project(start));
    queue.push(start);
    let mut qi = 0;
    while qi < queue.len() {
        let current = queue[qi];
        qi += 1;
        for raw in &current.class.super_types {
            let qualified = if raw.contains('.') {
                raw.clone()
            } else {
                qualify_simple_class(index, current.unit, raw).unwrap_or_else(|| raw.clone())
            };
            if !visited.insert(qualified.clone()) {
                continue;
            }
            match index.class(&qualified) {
                Some(cr) => {
                    chain.push(Ancestor::Project(cr));
                    queue.push(cr);
                }
                None => chain.push(Ancestor::External(qualified)),
            }
        }
    }
    chain
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionOutcome {
    Resolved,
    Ambiguous,
    Unresolved,
}

/// Result of resolving one call site. `candidates` holds exactly one
/// signature when resolved, all tied candidates in lexicographic render
/// order when ambiguous, and nothing when unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub outcome: ResolutionOutcome,
    pub candidates: Vec<MethodSignature>,
}

impl Resolution {
    fn from_candidates(mut candidates: Vec<MethodSignature>) -> Self {
        candidates.sort();
        candidates.dedup();
        match candidates.len() {
            0 => Resolution { outcome: ResolutionOutcome::Unresolved, candidates },
            1 => Resolution { outcome: ResolutionOutcome::Resolved, candidates },
            _ => Resolution { outcome: ResolutionOutcome::Ambiguous, candidates },
        }
    }

    fn unresolved() -> Self {
        Resolution { outcome: ResolutionOutcome::Unresolved, candidates: Vec::new() }
    }

    pub fn signature(&self) -> Option<&MethodSignature> {
        match self.outcome {
            ResolutionOutcome::Resolved => self.candidates.first(),
            _ => None,
        }
    }
}

/// A field access that resolved to a declared field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFact {
    pub name: String,
    pub declaring_class: String,
    pub declared_type: TypeName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldResolution {
    Field(FieldFact),
    /// The name is a parameter or local, not a field.
    LocalOrParam,
    Unresolved,
}

/// Builds the rendered signature of a project method, qualifying its types
/// through the unit that declares the class.
fn project_signature(
    index: &ProjectIndex<'_>,
    cr: ClassRef<'_>,
    method: &MethodDecl,
) -> MethodSignature {
    MethodSignature {
        return_type: qualify_type(index, cr.unit, &method.return_type.text),
        declaring_class: cr.class.qualified_name.clone(),
        name: method.name.clone(),
        parameter_types: method
            .parameters
            .iter()
            .map(|p| qualify_type(index, cr.unit, &p.declared_type.text))
            .collect(),
    }
}

/// All matches for (name, arity) in the nearest chain class that has any.
fn lookup_in_chain(
    index: &ProjectIndex<'_>,
    chain: &[Ancestor<'_>],
    name: &str,
    arity: usize,
) -> Vec<MethodSignature> {
    for entry in chain {
        match entry {
            Ancestor::Project(cr) => {
                let matches = cr.class.find_methods(name, arity);
                if !matches.is_empty() {
                    return matches.iter().map(|m| project_signature(index, *cr, m)).collect();
                }
            }
            Ancestor::External(qualified) => {
                let matches = index.table().lookup(qualified, name, arity);
                if !matches.is_empty() {
                    return matches.to_vec();
                }
            }
        }
    }
    Vec::new()
}

/// Methods of a type named by qualified name: project classes search their
/// ancestor chain, everything else hits the table.
fn lookup_in_type(
    index: &ProjectIndex<'_>,
    qualified: &str,
    name: &str,
    arity: usize,
) -> Vec<MethodSignature> {
    if let Some(cr) = index.class(qualified) {
        let chain = ancestor_chain(index, cr);
        lookup_in_chain(index, &chain, name, arity)
    } else {
        index.table().lookup(qualified, name, arity).to_vec()
    }
}

/// Declared type of a simple-name receiver, searching locals, then
/// parameters, then fields up the chain.
fn receiver_declared_type(
    index: &ProjectIndex<'_>,
    unit: &CompilationUnit,
    chain: &[Ancestor<'_>],
    method: &MethodDecl,
    name: &str,
) -> Option<TypeName> {
    if let Some(local) = method.locals.iter().find(|l| l.name == name) {
        return Some(qualify_type(index, unit, &local.declared_type.text));
    }
    if let Some(param) = method.parameters.iter().find(|p| p.name == name) {
        return Some(qualify_type(index, unit, &param.declared_type.text));
    }
    for entry in chain {
        if let Ancestor::Project(cr) = entry {
            if let Some(field) = cr.class.find_field(name) {
                return Some(qualify_type(index, cr.unit, &field.declared_type.text));
            }
        }
    }
    None
}

fn is_simple_ident(text: &str) -> bool {
    !text.is_empty()
        && text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
        && text.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

fn is_dotted_name(text: &str) -> bool {
    !text.is_empty() && text.split('.').all(is_simple_ident)
}

/// Resolves one call site recorded in `method`, which must belong to
/// `enclosing` in `unit`.
pub fn resolve_call(
    index: &ProjectIndex<'_>,
    unit: &CompilationUnit,
    enclosing: &ClassDecl,
    method: &MethodDecl,
    site: &CallSite,
) -> Resolution {
    let Some(own) = index.class(&enclosing.qualified_name) else {
        return Resolution::unresolved();
    };
    let chain = ancestor_chain(index, own);
    let name = site.callee_name.as_str();
    let arity = site.argument_count;

    match site.receiver_expr.as_deref() {
        None => {
            let own_matches = lookup_in_chain(index, &chain, name, arity);
            if !own_matches.is_empty() {
                return Resolution::from_candidates(own_matches);
            }
            // Explicit static imports shadow wildcard ones.
            let mut explicit = Vec::new();
            for import in &unit.imports {
                if import.is_static && !import.is_wildcard && import.last_segment() == name {
                    explicit.extend(lookup_in_type(index, import.parent_path(), name, arity));
                }
            }
            if !explicit.is_empty() {
                return Resolution::from_candidates(explicit);
            }
            let mut wildcard = Vec::new();
            for import in &unit.imports {
                if import.is_static && import.is_wildcard {
                    wildcard.extend(lookup_in_type(index, &import.path, name, arity));
                }
            }
            if !wildcard.is_empty() {
                return Resolution::from_candidates(wildcard);
            }
            Resolution::unresolved()
        }
        Some("this") => Resolution::from_candidates(lookup_in_chain(index, &chain, name, arity)),
        Some("super") => {
            Resolution::from_candidates(lookup_in_chain(index, &chain[1..], name, arity))
        }
        Some(receiver) => {
            if let Some(rest) = receiver.strip_prefix("this.") {
                if is_simple_ident(rest) {
                    if let Some(field_ty) =
                        receiver_field_type(index, &chain, rest)
                    {
                        return Resolution::from_candidates(lookup_in_type(
                            index,
                            &field_ty.text,
                            name,
                            arity,
                        ));
                    }
                }
                return Resolution::unresolved();
            }
            if is_simple_ident(receiver) {
                if let Some(ty) = receiver_declared_type(index, unit, &chain, method, receiver) {
                    return Resolution::from_candidates(lookup_in_type(index, &ty.text, name, arity));
                }
                if let Some(qualified) = qualify_simple_class(index, unit, receiver) {
                    return Resolution::from_candidates(lookup_in_type(index, &qualified, name, arity));
                }
                return Resolution::unresolved();
            }
            if is_dotted_name(receiver)
                && (index.class(receiver).is_some() || index.table().has_class(receiver))
            {
                return Resolution::from_candidates(lookup_in_type(index, receiver, name, arity));
            }
            Resolution::unresolved()
        }
    }
}

fn receiver_field_type(
    index: &ProjectIndex<'_>,
    chain: &[Ancestor<'_>],
    name: &str,
) -> Option<TypeName> {
    for entry in chain {
        if let Ancestor::Project(cr) = entry {
            if let Some(field) = cr.class.find_field(name) {
                return Some(qualify_type(index, cr.unit, &field.declared_type.text));
            }
        }
    }
    None
}

/// Classifies a recorded name use. Only bare names, `this.` reads, `super.`
/// reads, and names qualified by the enclosing class's simple name can be
/// fields of the focal class; everything else is unresolved here.
pub fn resolve_field(
    index: &ProjectIndex<'_>,
    _unit: &CompilationUnit,
    enclosing: &ClassDecl,
    method: &MethodDecl,
    site: &FieldAccessSite,
) -> FieldResolution {
    let Some(own) = index.class(&enclosing.qualified_name) else {
        return FieldResolution::Unresolved;
    };
    let chain = ancestor_chain(index, own);
    let name = site.field_name.as_str();

    let search_from: &[Ancestor<'_>] = match site.receiver_expr.as_deref() {
        None => {
            let shadowed = method.parameters.iter().any(|p| p.name == name)
                || method.locals.iter().any(|l| l.name == name);
            if shadowed {
                return FieldResolution::LocalOrParam;
            }
            &chain
        }
        Some("this") => &chain,
        Some("super") => &chain[1..],
        Some(r) if r == enclosing.simple_name => &chain,
        _ => return FieldResolution::Unresolved,
    };

    for entry in search_from {
        if let Ancestor::Project(cr) = entry {
            if let Some(field) = cr.class.find_field(name) {
                return FieldResolution::Field(FieldFact {
                    name: field.name.clone(),
                    declaring_class: cr.class.qualified_name.clone(),
                    declared_type: qualify_type(index, cr.unit, &field.declared_type.text),
                });
            }
        }
    }
    FieldResolution::Unresolved
}
