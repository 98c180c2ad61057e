//! Plain-text permutation group files.
//!
//! Line 1 is the degree; every later nonempty line is one generator in
//! disjoint-cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
//! `()` denotes the identity. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

pub fn parse_perm_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text.lines().enumerate();
    let degree = loop {
        match lines.next() {
            Some((lineno, line)) => {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let degree: usize = line.parse().map_err(|_| Error::Syntax {
                    position: lineno + 1,
                    message: format!("expected the degree on line {}, found {line:?}", lineno + 1),
                })?;
                if degree == 0 || degree > u16::MAX as usize {
                    return Err(Error::Syntax {
                        position: lineno + 1,
                        message: format!("degree {degree} out of range"),
                    });
                }
                break degree;
            }
            None => {
                return Err(Error::Syntax {
                    position: 0,
                    message: "empty file: the first line must give the degree".into(),
                })
            }
        }
    };
    let mut generators = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cycles = parse_cycles(line, degree, lineno + 1)?;
        let perm = Permutation::from_cycles(degree, &cycles).map_err(|e| Error::Syntax {
            position: lineno + 1,
            message: format!("line {}: {e}", lineno + 1),
        })?;
        generators.push(perm);
    }
    Ok((degree, generators))
}

fn parse_cycles(line: &str, degree: usize, lineno: usize) -> Result<Vec<Vec<u16>>> {
    let syntax = |message: String| Error::Syntax {
        position: lineno,
        message: format!("line {lineno}: {message}"),
    };
    let mut cycles = Vec::new();
    let bytes = line.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if bytes[pos] != b'(' {
            return Err(syntax(format!("expected '(', found {:?}", bytes[pos] as char)));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                break;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(syntax("expected a point number".into()));
            }
            let point: usize = std::str::from_utf8(&bytes[start..pos])
                .expect("ascii digits")
                .parse()
                .map_err(|_| syntax("point out of range".into()))?;
            if point == 0 || point > degree {
                return Err(syntax(format!(
                    "point {point} outside the range 1..={degree}"
                )));
            }
            cycle.push((point - 1) as u16);
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b',' {
                pos += 1;
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    if cycles.is_empty() && !line.contains('(') {
        return Err(syntax("expected a cycle expression".into()));
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_simple_file() {
        let (degree, gens) = parse_perm_file("# a comment\n5\n(1,2,3,4,5)\n(1,2,3)\n").unwrap();
        assert_eq!(degree, 5);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].to_string(), "(1,2,3,4,5)");
    }

    #[test]
    fn identity_and_space_separated_points() {
        let (_, gens) = parse_perm_file("4\n()\n(1 2)(3 4)\n").unwrap();
        assert!(gens[0].is_identity());
        assert_eq!(gens[1].to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_perm_file("").is_err());
        assert!(parse_perm_file("abc\n").is_err());
        assert!(parse_perm_file("0\n").is_err());
        assert!(parse_perm_file("3\n(1,4)\n").is_err()); // point out of range
        assert!(parse_perm_file("3\n(1,1)\n").is_err()); // repeated point
        assert!(parse_perm_file("3\n(1,2\n").is_err()); // unterminated
        assert!(parse_perm_file("3\nxyz\n").is_err());
    }

    #[test]
    fn errors_name_the_line() {
        match parse_perm_file("3\n(1,2)\n(9)\n") {
            Err(Error::Syntax { message, .. }) => assert!(message.contains("line 3")),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
