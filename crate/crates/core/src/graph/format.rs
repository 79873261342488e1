//! Edge-list and graph6 text formats.
//!
//! Edge list: a header `n m`, an optional `colours c_0 ... c_{n-1}` line,
//! then `m` lines `u v`. Lines starting with `#` are comments.

use super::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses either supported format, chosen by the first meaningful line:
/// digits mean an edge list, anything else is taken as graph6.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let looks_numeric = first
        .split_whitespace()
        .all(|tok| tok.chars().all(|c| c.is_ascii_digit()));
    if looks_numeric {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = head[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count `{}`", head[0])))?;
    let m: usize = head[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad edge count `{}`", head[1])))?;

    let mut g = Graph::new(n);
    let mut edges_read = 0;
    let mut first_body = true;
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if first_body && toks[0] == "colours" {
            first_body = false;
            let colours = toks[1..]
                .iter()
                .map(|t| t.parse::<u32>().map_err(|_| parse_err(lineno, format!("bad colour `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if colours.len() != n {
                return Err(parse_err(
                    lineno,
                    format!("expected {n} colours, found {}", colours.len()),
                ));
            }
            g.colours = colours;
            continue;
        }
        first_body = false;
        if toks.len() != 2 {
            return Err(parse_err(lineno, "edge line must be `u v`"));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad vertex `{}`", toks[0])))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad vertex `{}`", toks[1])))?;
        if u >= n || v >= n {
            return Err(parse_err(lineno, format!("vertex {} out of range (n = {n})", u.max(v))));
        }
        if u == v {
            return Err(parse_err(lineno, format!("loop at vertex {u}")));
        }
        if g.is_adjacent(u, v) {
            return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
        }
        edges_read += 1;
        if edges_read > m {
            return Err(parse_err(lineno, format!("more than the declared {m} edges")));
        }
        g.set_edge(u, v, true);
    }
    if edges_read != m {
        return Err(parse_err(hline, format!("declared {m} edges, found {edges_read}")));
    }
    Ok(g)
}

/// Edge-list serialisation. The colours line is written only for coloured
/// graphs, so parsing the output gives back the same graph.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    if g.is_coloured() {
        out.push_str("colours");
        for c in g.colours() {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("invalid graph6 byte at offset {pos}")));
    }
    let (n, body) = match bytes {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {expected} for n = {n}", body.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    if g.is_coloured() {
        return Err(GraphError::ColouredGraph6);
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
