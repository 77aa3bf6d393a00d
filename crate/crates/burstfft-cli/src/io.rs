//! Word file format.
//!
//! ```text
//! # gf <p> <d> 0x<modulus> n=<n>
//! <hex> <hex> ... <hex>
//! # status ok
//! ```
//!
//! One vector per non-comment line, entries in lowercase hex. Lines starting
//! with `#` after the header are annotations.

use anyhow::{bail, ensure, Context};
use burstfft::{Elem, FieldParams};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFile {
    pub field: FieldParams,
    pub n: usize,
    pub words: Vec<Vec<Elem>>,
    /// `# key value` annotations after the header, in order.
    pub notes: Vec<(String, String)>,
}

impl WordFile {
    pub fn new(field: FieldParams, n: usize) -> Self {
        WordFile { field, n, words: vec![], notes: vec![] }
    }

    pub fn single(field: FieldParams, word: Vec<Elem>) -> Self {
        WordFile { field, n: word.len(), words: vec![word], notes: vec![] }
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let FieldParams { p, d, modulus } = self.field;
        let mut s = format!("# gf {p} {d} {modulus:#x} n={}\n", self.n);
        for w in &self.words {
            let line: Vec<String> = w.iter().map(|x| format!("{x:x}")).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        for (k, v) in &self.notes {
            let _ = writeln!(s, "# {k} {v}");
        }
        s
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().context("empty word file")?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "#" || parts[1] != "gf" {
            bail!("bad header `{header}`");
        }
        let p: u32 = parts[2].parse().context("characteristic")?;
        let d: u32 = parts[3].parse().context("degree")?;
        let modulus = burstfft::field::parse_u64(parts[4])?;
        let n: usize = parts[5].strip_prefix("n=").context("expected n=<len>")?.parse().context("length")?;
        let mut out = WordFile::new(FieldParams::new(p, d, modulus), n);
        let q = out.field.order();
        for (lineno, l) in lines.enumerate() {
            if let Some(note) = l.strip_prefix('#') {
                let note = note.trim();
                let (k, v) = note.split_once(' ').unwrap_or((note, ""));
                out.notes.push((k.to_string(), v.trim().to_string()));
                continue;
            }
            let w = l
                .split_whitespace()
                .map(|t| {
                    let x = u64::from_str_radix(t, 16).with_context(|| format!("line {}: `{t}`", lineno + 2))?;
                    ensure!(x < q, "line {}: {x:#x} is not an element of GF({q})", lineno + 2);
                    Ok(x as Elem)
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            ensure!(w.len() == n, "line {}: {} entries, header says n={n}", lineno + 2, w.len());
            out.words.push(w);
        }
        Ok(out)
    }

    /// The only vector of the file.
    pub fn one(&self) -> anyhow::Result<&[Elem]> {
        match self.words.as_slice() {
            [w] => Ok(w),
            ws => bail!("expected one vector, found {}", ws.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut f = WordFile::single(FieldParams::new(2, 8, 0x11d), vec![0, 1, 0xff, 0x1d]);
        f.words.push(vec![3, 3, 3, 3]);
        f.notes.push(("status".into(), "ok".into()));
        let text = f.render();
        assert!(text.starts_with("# gf 2 8 0x11d n=4\n0 1 ff 1d\n"));
        assert_eq!(WordFile::parse(&text).unwrap(), f);
        assert_eq!(WordFile::parse(&text).unwrap().note("status"), Some("ok"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(WordFile::parse("").is_err());
        assert!(WordFile::parse("# gf 13 1 0xd n=2\n1 2 3\n").is_err());
        assert!(WordFile::parse("# gf 13 1 0xd n=2\n1 d\n").is_err());
        assert!(WordFile::parse("gf 13 1 0xd n=2\n").is_err());
    }
}
