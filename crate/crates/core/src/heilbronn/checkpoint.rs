//! Plain-text progress file for long range runs.
//!
//! ```text
//! ell=3 A=2 B=10000000
//! done=4194305
//! 7
//! 9
//! ```
//!
//! `done` is the largest integer such that everything in `[A, done]` has been
//! sieved; the remaining lines are the survivors found so far, ascending.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub ell: u32,
    pub a: u64,
    pub b: u64,
    pub done: u64,
    pub survivors: Vec<u64>,
}

impl Checkpoint {
    /// Fresh state: nothing processed yet.
    pub fn new(ell: u32, a: u64, b: u64) -> Self {
        Self {
            ell,
            a,
            b,
            done: a - 1,
            survivors: Vec::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.done >= self.b
    }

    /// Does this checkpoint belong to the run `(ell, a, b)`?
    pub fn matches(&self, ell: u32, a: u64, b: u64) -> bool {
        (self.ell, self.a, self.b) == (ell, a, b)
    }

    pub fn render(&self) -> String {
        let mut s = format!("ell={} A={} B={}\ndone={}\n", self.ell, self.a, self.b, self.done);
        for f in &self.survivors {
            s.push_str(&f.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };

        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty checkpoint"))?;
        let mut fields = header.split_whitespace();
        let mut field = |key: &str| -> Result<u64> {
            fields
                .next()
                .and_then(|t| t.strip_prefix(key))
                .and_then(|t| t.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(1, &format!("expected {key}=<integer>")))
        };
        let ell = field("ell")?;
        let a = field("A")?;
        let b = field("B")?;
        if fields.next().is_some() {
            return Err(bad(1, "trailing text after B"));
        }
        let ell = u32::try_from(ell).map_err(|_| bad(1, "ell out of range"))?;
        if a < 2 || a > b {
            return Err(bad(1, "need 2 <= A <= B"));
        }

        let (_, done_line) = lines.next().ok_or_else(|| bad(2, "missing done= line"))?;
        let done: u64 = done_line
            .trim()
            .strip_prefix("done=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(2, "expected done=<integer>"))?;
        if done < a - 1 || done > b {
            return Err(bad(2, "done outside [A-1, B]"));
        }

        let mut survivors = Vec::new();
        for (i, l) in lines {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            let f: u64 = l.parse().map_err(|_| bad(i + 1, "survivor is not an integer"))?;
            if survivors.last().is_some_and(|&prev| prev >= f) || f < a || f > done {
                return Err(bad(i + 1, "survivors must be ascending and within [A, done]"));
            }
            survivors.push(f);
        }
        Ok(Self {
            ell,
            a,
            b,
            done,
            survivors,
        })
    }

    /// `Ok(None)` when the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Write to a sibling temporary file and rename over `path`, so a crash
    /// leaves either the old or the new checkpoint.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = Path::new(&tmp);
        {
            let mut file = fs::File::create(tmp)?;
            file.write_all(self.render().as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let cp = Checkpoint {
            ell: 3,
            a: 2,
            b: 10_000,
            done: 2000,
            survivors: vec![7, 9, 13, 1597],
        };
        let text = cp.render();
        assert_eq!(text, "ell=3 A=2 B=10000\ndone=2000\n7\n9\n13\n1597\n");
        assert_eq!(Checkpoint::parse(&text).unwrap(), cp);
        let fresh = Checkpoint::new(5, 100, 200);
        assert_eq!(fresh.done, 99);
        assert_eq!(Checkpoint::parse(&fresh.render()).unwrap(), fresh);
    }

    #[test]
    fn malformed_files_name_the_line() {
        let cases = [
            ("", 1),
            ("ell=3 A=2\ndone=5\n", 1),
            ("ell=3 A=2 B=10\n", 2),
            ("ell=3 A=2 B=10\ndone=11\n", 2),
            ("ell=3 A=2 B=10\ndone=9\n7\nx\n", 4),
            ("ell=3 A=2 B=10\ndone=9\n7\n7\n", 4),
            ("ell=3 A=2 B=100\ndone=9\n13\n", 3),
        ];
        for (text, line) in cases {
            match Checkpoint::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn save_and_load() {
        let dir = std::env::temp_dir().join(format!("nesieve-cp-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cp");
        assert_eq!(Checkpoint::load(&path).unwrap(), None);
        let cp = Checkpoint {
            ell: 7,
            a: 2,
            b: 1000,
            done: 500,
            survivors: vec![29, 43, 49],
        };
        cp.save(&path).unwrap();
        assert_eq!(Checkpoint::load(&path).unwrap(), Some(cp));
        fs::remove_dir_all(&dir).unwrap();
    }
}
