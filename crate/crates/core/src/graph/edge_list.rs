//! Plain-text edge lists: a header line `n m` followed by `m` lines `u v`
//! with `0 <= u < v < n`.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = fields
            .next()
            .ok_or_else(|| bad(format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| bad(format!("{what} {tok:?} is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(bad("expected exactly two fields".into()));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let (n, m) = parse_pair(header, 1)?;
    let mut g = Graph::empty(n);
    let mut read = 0;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if read == m {
            return Err(Error::Parse {
                line: lineno,
                message: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, lineno)?;
        let fail = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        if u == v {
            return Err(fail(format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(fail(format!("endpoints must satisfy u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(fail(format!("vertex {v} out of range for n = {n}")));
        }
        if g.has_edge(u, v) {
            return Err(fail(format!("duplicate edge {u} {v}")));
        }
        g.add_edge_unchecked(u, v);
        read += 1;
    }
    if read != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("header declares {m} edges but {read} were given"),
        });
    }
    Ok(g)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

/// Serialises `g` with edges in lexicographic order; the output round-trips
/// through [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn writes_header_and_sorted_edges() {
        assert_eq!(write_edge_list(&cycle(3)), "3 3\n0 1\n0 2\n1 2\n");
        assert_eq!(write_edge_list(&Graph::empty(4)), "4 0\n");
    }

    #[test]
    fn parses_what_it_writes() {
        let g = complete(5);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "3\n",
            "3 1\n0 0\n",
            "3 1\n1 0\n",
            "3 1\n0 3\n",
            "3 2\n0 1\n0 1\n",
            "3 2\n0 1\n",
            "3 1\n0 1\n1 2\n",
            "3 1\n0 x\n",
            "3 1\n0 1 2\n",
        ] {
            assert!(parse_edge_list(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn reports_line_numbers() {
        match parse_edge_list("4 2\n0 1\n2 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
