//! graph6 and plain edge-list encodings.

use crate::graph::{Graph, GraphError};

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Encodes in McKay's graph6 format (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut word = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | g.adjacent(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(63 + word);
                word = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(63 + (word << (6 - bits)));
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and
/// surrounding whitespace are accepted; padding bits must be zero.
pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("byte {pos} outside graph6 range")));
    }
    let value = |slice: &[u8]| {
        slice
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    let (n, rest) = match bytes {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, tail @ ..] if tail.len() >= 6 => (value(&tail[..6]), &tail[6..]),
        [126, tail @ ..] if tail.len() >= 3 && tail[0] != 126 => (value(&tail[..3]), &tail[3..]),
        [126, ..] => return Err(parse_err(1, "truncated graph6 size header")),
        [first, tail @ ..] => ((*first - 63) as usize, tail),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    if rest.len() != total_bits.div_ceil(6) {
        return Err(parse_err(
            1,
            format!(
                "expected {} data bytes for {n} vertices, found {}",
                total_bits.div_ceil(6),
                rest.len()
            ),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (total_bits..rest.len() * 6).any(bit) {
        return Err(parse_err(1, "nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Writes `n m` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Everything after `#` on a line is ignored, as are blank lines.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected two integers, found {:?}", l),
            ));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| parse_err(line, format!("{s:?}: {e}")))
        };
        Ok((num(fields[0])?, num(fields[1])?))
    };

    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let (n, m) = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        edges.push(pair(line, l)?);
    }
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edge_list(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }

    #[test]
    fn known_graph6_strings() {
        // Reference encodings produced by nauty's geng/showg conventions.
        assert_eq!(to_graph6(&Graph::from_fn(4, |_, _| true)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&path), "Bg");
    }

    #[test]
    fn graph6_round_trip() {
        let p = petersen();
        let s = to_graph6(&p);
        assert_eq!(from_graph6(&s).unwrap(), p);
        assert_eq!(from_graph6(&format!(">>graph6<<{s}\n")).unwrap(), p);
    }

    #[test]
    fn graph6_long_header() {
        let g = Graph::from_fn(70, |u, v| (u + v) % 7 == 0);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        // "Bw" sets a padding bit for n = 3.
        assert!(from_graph6("Bh").is_err());
        assert!(from_graph6("C\u{7f}").is_err());
    }

    #[test]
    fn edge_list_round_trip_with_comments() {
        let text = "# pentagon\n5 5\n0 1\n1 2 # spoke\n\n2 3\n3 4\n4 0\n";
        let g = from_edge_list(text).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(from_edge_list("").is_err());
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(from_edge_list("3 1\n0 x\n").is_err());
        assert!(matches!(
            from_edge_list("3 2\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
    }
}
