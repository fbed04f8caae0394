//! The `ugraph v1` text format.
//!
//! ```text
//! ugraph v1 <n> <m>
//! <u> <v> <c>          (m lines)
//! #layer <u> <k>       (optional, one per vertex)
//! ```
//!
//! Conductances are written with Rust's shortest round-trip float formatting,
//! so `read(write(net))` reproduces every conductance bit for bit.

use std::io::{BufRead, Write};

use super::{NetError, Network};

pub const UGRAPH_HEADER: &str = "ugraph v1";

pub fn write_ugraph<W: Write>(net: &Network, mut out: W) -> Result<(), NetError> {
    writeln!(out, "{} {} {}", UGRAPH_HEADER, net.n(), net.m())?;
    for e in net.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.c)?;
    }
    if let Some(layers) = net.layers() {
        for (x, k) in layers.iter().enumerate() {
            writeln!(out, "#layer {} {}", x, k)?;
        }
    }
    Ok(())
}

pub fn read_ugraph<R: BufRead>(input: R) -> Result<Network, NetError> {
    let mut lines = input.lines().enumerate();
    let (n, m) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(parse_err(0, "missing header"));
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix(UGRAPH_HEADER)
            .ok_or_else(|| parse_err(i + 1, "expected `ugraph v1 <n> <m>`"))?;
        let mut it = rest.split_whitespace();
        let n = parse_field::<usize>(it.next(), i + 1, "vertex count")?;
        let m = parse_field::<usize>(it.next(), i + 1, "edge count")?;
        if it.next().is_some() {
            return Err(parse_err(i + 1, "trailing tokens in header"));
        }
        break (n, m);
    };

    let mut edges = Vec::with_capacity(m);
    let mut layers: Option<Vec<Option<u32>>> = None;
    for (i, line) in lines {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("#layer") {
            let mut it = rest.split_whitespace();
            let x = parse_field::<usize>(it.next(), lineno, "vertex")?;
            let k = parse_field::<u32>(it.next(), lineno, "layer")?;
            if x >= n {
                return Err(parse_err(lineno, "layer label for out-of-range vertex"));
            }
            let slots = layers.get_or_insert_with(|| vec![None; n]);
            if slots[x].replace(k).is_some() {
                return Err(parse_err(lineno, "duplicate layer label"));
            }
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        if edges.len() == m {
            return Err(parse_err(lineno, "more edge lines than declared"));
        }
        let mut it = trimmed.split_whitespace();
        let u = parse_field::<usize>(it.next(), lineno, "endpoint")?;
        let v = parse_field::<usize>(it.next(), lineno, "endpoint")?;
        let c = parse_field::<f64>(it.next(), lineno, "conductance")?;
        if it.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
        edges.push((u, v, c));
    }
    if edges.len() != m {
        return Err(parse_err(0, &format!("expected {} edges, found {}", m, edges.len())));
    }
    let net = Network::new(n, edges)?;
    match layers {
        None => Ok(net),
        Some(slots) => {
            let labels: Option<Vec<u32>> = slots.into_iter().collect();
            let labels = labels.ok_or_else(|| parse_err(0, "layer block must label every vertex"))?;
            net.with_layers(labels)
        }
    }
}

impl Network {
    pub fn to_ugraph_string(&self) -> String {
        let mut buf = Vec::new();
        write_ugraph(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ugraph output is ascii")
    }

    pub fn from_ugraph_str(text: &str) -> Result<Network, NetError> {
        read_ugraph(text.as_bytes())
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, NetError> {
    let tok = tok.ok_or_else(|| parse_err(line, &format!("missing {}", what)))?;
    tok.parse().map_err(|_| parse_err(line, &format!("bad {} `{}`", what, tok)))
}

fn parse_err(line: usize, msg: &str) -> NetError {
    NetError::Parse { line, msg: msg.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_expected_text() {
        let net = Network::new(3, [(0, 1, 1.0), (1, 2, 0.1)])
            .unwrap()
            .with_layers(vec![0, 0, 1])
            .unwrap();
        let text = net.to_ugraph_string();
        assert_eq!(text, "ugraph v1 3 2\n0 1 1\n1 2 0.1\n#layer 0 0\n#layer 1 0\n#layer 2 1\n");
        assert_eq!(Network::from_ugraph_str(&text).unwrap(), net);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Network::from_ugraph_str("graph 2 1\n0 1 1\n").is_err());
        assert!(Network::from_ugraph_str("ugraph v1 2 2\n0 1 1\n").is_err());
        assert!(Network::from_ugraph_str("ugraph v1 2 1\n0 1 -1\n").is_err());
        assert!(Network::from_ugraph_str("ugraph v1 2 1\n0 1 1\n#layer 0 0\n").is_err());
        assert!(Network::from_ugraph_str("ugraph v1 2 1\n0 x 1\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            n in 1usize..12,
            raw in proptest::collection::vec((0usize..12, 0usize..12, 1e-6f64..1e6), 0..30),
            labelled in any::<bool>(),
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v, c)| (u % n, v % n, c)).collect();
            let mut net = Network::new(n, edges).unwrap();
            if labelled {
                net = net.with_layers((0..n as u32).map(|x| x / 2).collect()).unwrap();
            }
            let text = net.to_ugraph_string();
            let back = Network::from_ugraph_str(&text).unwrap();
            for (a, b) in back.edges().iter().zip(net.edges()) {
                prop_assert_eq!(a.c.to_bits(), b.c.to_bits());
            }
            prop_assert_eq!(&back, &net);
            prop_assert_eq!(back.to_ugraph_string(), text);
        }
    }
}
