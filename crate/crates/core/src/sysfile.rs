//! The MQS text format for polynomial systems.
//!
//! ```text
//! MQS 1
//! # scheme: rainbow
//! field 4
//! vars 7
//! polys 4
//! 3*x1^2 + 2*x1*x2 + 1
//! ...
//! ```
//!
//! Line 1 is the magic "MQS 1". Comment lines starting with '#' are permitted
//! anywhere after it; "# key: value" comments carry system metadata.
//! Coefficients are field-element representatives in [0, q); the field is
//! identified by its size q via the fixed modulus table. Parsing and
//! serialization round-trip bit-exactly.

use std::fs;
use std::path::Path;

use crate::field::Field;
use crate::poly::{ParseError, PolySystem, Polynomial};

pub const MAGIC: &str = "MQS 1";

/// Serializes a system to the MQS text format, metadata first.
pub fn write_system(sys: &PolySystem) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    for (k, v) in sys.metadata() {
        let v = v.replace('\n', " ");
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out.push_str(&format!("field {}\n", sys.field().q()));
    out.push_str(&format!("vars {}\n", sys.nvars()));
    out.push_str(&format!("polys {}\n", sys.len()));
    for p in sys.polys() {
        out.push_str(&p.to_text());
        out.push('\n');
    }
    out
}

/// Parses the MQS text format.
pub fn parse_system(text: &str) -> Result<PolySystem, ParseError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l.trim_end() == MAGIC => {}
        other => {
            return Err(ParseError(format!(
                "expected magic line '{MAGIC}', got {other:?}"
            )))
        }
    }
    let mut metadata = std::collections::BTreeMap::new();
    let mut content = lines.filter_map(|l| {
        let t = l.trim();
        if t.is_empty() {
            return None;
        }
        if let Some(comment) = t.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once(':') {
                metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
            return None;
        }
        Some(t.to_string())
    });
    let header = |line: Option<String>, key: &str| -> Result<u64, ParseError> {
        let line = line.ok_or_else(|| ParseError(format!("missing '{key}' header")))?;
        let rest = line
            .strip_prefix(key)
            .ok_or_else(|| ParseError(format!("expected '{key} <value>', got '{line}'")))?;
        rest.trim()
            .parse()
            .map_err(|_| ParseError(format!("bad value in '{line}'")))
    };
    let q = header(content.next(), "field")?;
    let nvars = header(content.next(), "vars")? as usize;
    let m = header(content.next(), "polys")? as usize;
    if m == 0 {
        return Err(ParseError("a system needs at least one polynomial".into()));
    }
    let field = Field::of_size(q).map_err(|e| ParseError(e.to_string()))?;
    let mut polys = Vec::with_capacity(m);
    for i in 0..m {
        let line = content
            .next()
            .ok_or_else(|| ParseError(format!("expected {m} polynomials, found {i}")))?;
        polys.push(Polynomial::parse(&field, nvars, &line)?);
    }
    if content.next().is_some() {
        return Err(ParseError(format!("trailing content after {m} polynomials")));
    }
    let mut sys = PolySystem::new(polys);
    sys.set_metadata(metadata);
    Ok(sys)
}

pub fn read_file(path: &Path) -> Result<PolySystem, ParseError> {
    let text =
        fs::read_to_string(path).map_err(|e| ParseError(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}

pub fn write_file(path: &Path, sys: &PolySystem) -> std::io::Result<()> {
    fs::write(path, write_system(sys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::gen_random_system;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn simple_round_trip() {
        let f = Field::of_size(4).unwrap();
        let polys = vec![
            Polynomial::parse(&f, 3, "3*x1^2 + 2*x2*x3 + 1").unwrap(),
            Polynomial::parse(&f, 3, "1*x3").unwrap(),
        ];
        let mut sys = PolySystem::new(polys);
        sys.set_meta("scheme", "random");
        sys.set_meta("seed", 7u64);
        let text = write_system(&sys);
        assert!(text.starts_with("MQS 1\n"));
        assert!(text.contains("field 4\n"));
        assert!(text.contains("# seed: 7\n"));
        let parsed = parse_system(&text).unwrap();
        assert_eq!(parsed, sys);
    }

    #[test]
    fn comments_allowed_anywhere_after_magic() {
        let text = "MQS 1\nfield 2\n# note: hello\nvars 2\npolys 1\n# another\n1*x1*x2 + 1\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.metadata()["note"], "hello");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_system("NOPE\nfield 2\n").is_err());
        assert!(parse_system("MQS 1\nfield 6\nvars 1\npolys 1\n1*x1\n").is_err());
        assert!(parse_system("MQS 1\nfield 2\nvars 1\npolys 2\n1*x1\n").is_err());
        assert!(parse_system("MQS 1\nfield 2\nvars 1\npolys 1\n1*x1\n1*x1\n").is_err());
        assert!(parse_system("MQS 1\nfield 2\nvars 1\npolys 1\n1*x9\n").is_err());
    }

    #[test]
    fn random_systems_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for q in [2u64, 3, 4, 9] {
            let f = Field::of_size(q).unwrap();
            for _ in 0..25 {
                let n = rng.gen_range(1..=4usize);
                let m = rng.gen_range(1..=4usize);
                let degrees: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
                let sys = gen_random_system(&f, n, &degrees, &mut rng);
                let parsed = parse_system(&write_system(&sys)).unwrap();
                assert_eq!(parsed, sys);
            }
        }
    }
}
