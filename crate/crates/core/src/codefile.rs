//! Plain-text code files.
//!
//! One vertex per line, as a base-36 digit string (Hamming) or as
//! comma-separated sorted elements (Johnson). A line `weight<TAB>vertex`
//! gives a rational weight such as `3/2`. `#` starts a comment, and a
//! leading `# scheme: H(24,2)` comment names the scheme.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse, render, Rational};
use crate::scheme::{Scheme, SchemeSpec, Vertex};
use crate::spectra::CodeVector;

/// Scheme named by a `# scheme:` header, if any.
pub fn header_scheme(text: &str) -> Result<Option<SchemeSpec>> {
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(spec) = rest.trim().strip_prefix("scheme:") {
                return spec.trim().parse().map(Some);
            }
        } else if !line.is_empty() {
            break;
        }
    }
    Ok(None)
}

pub fn parse_code(scheme: Arc<Scheme>, text: &str) -> Result<CodeVector> {
    let mut entries: BTreeMap<Vertex, Rational> = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        let (weight, vertex) = match line.split_once('\t') {
            Some((w, v)) => {
                let w = parse(w).ok_or_else(|| err(format!("bad weight `{}`", w.trim())))?;
                (w, v.trim())
            }
            None => (Rational::one(), line),
        };
        let v = scheme.parse_vertex(vertex).map_err(|e| err(e.to_string()))?;
        if entries.insert(v, weight).is_some() {
            return Err(err(format!("duplicate vertex `{vertex}`")));
        }
    }
    entries.retain(|_, w| !w.is_zero());
    Ok(CodeVector::from_weights(scheme, entries))
}

/// Read a code file; the scheme comes from `scheme` or the file header.
pub fn load(path: &Path, scheme: Option<SchemeSpec>) -> Result<CodeVector> {
    let text = std::fs::read_to_string(path)?;
    let spec = match (scheme, header_scheme(&text)?) {
        (Some(s), Some(h)) if s != h => {
            return Err(Error::Config(format!("file declares {h} but {s} was requested")))
        }
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => {
            return Err(Error::Config(format!(
                "{} has no `# scheme:` header; pass a scheme",
                path.display()
            )))
        }
    };
    parse_code(Arc::new(Scheme::build(spec)?), &text)
}

pub fn emit(chi: &CodeVector, comment: Option<&str>) -> String {
    let scheme = chi.scheme();
    let mut out = format!("# scheme: {}\n", scheme.spec());
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let subset = chi.is_subset();
    for (v, w) in chi.iter() {
        if subset {
            let _ = writeln!(out, "{}", scheme.format_vertex(v));
        } else {
            let _ = writeln!(out, "{}\t{}", render(w), scheme.format_vertex(v));
        }
    }
    out
}

pub fn save(chi: &CodeVector, path: &Path, comment: Option<&str>) -> Result<()> {
    std::fs::write(path, emit(chi, comment))?;
    Ok(())
}
