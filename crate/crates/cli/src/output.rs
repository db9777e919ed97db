use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

/// Hex digits of the SHA-256 prefix carried in every row.
const HASH_DIGITS: usize = 16;

/// Hash of the canonical JSON form of a run (serde_json sorts object keys).
pub fn config_hash(canonical: &serde_json::Value) -> String {
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    hex::encode(digest)[..HASH_DIGITS].to_string()
}

pub fn point(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub fn points(zs: &[Complex64]) -> String {
    zs.iter().map(|&z| point(z)).collect::<Vec<_>>().join(";")
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn write(&self, path: Option<&Path>) -> io::Result<()> {
        let text = self.render();
        match path {
            Some(p) => std::fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_with_commas_are_quoted() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x,y".into(), "say \"hi\"".into()]);
        assert_eq!(t.render(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    }

    #[test]
    fn hash_ignores_key_order() {
        let a: serde_json::Value = serde_json::from_str(r#"{"x":1,"y":2}"#).unwrap();
        let b: serde_json::Value = serde_json::from_str(r#"{"y":2,"x":1}"#).unwrap();
        assert_eq!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), HASH_DIGITS);
    }

    #[test]
    fn points_are_signed() {
        assert_eq!(point(Complex64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(points(&[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]), "0+1i;1+0i");
    }
}
