use clap::{Args, ValueEnum};
use genfree::words::{enumerate_cw0, sieve, verify_admissible, Alphabet, Word};
use serde_json::json;

use crate::report::{check_ceiling, usage, CmdResult, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sieve,
    Verify,
    Enumerate,
}

#[derive(Debug, Args)]
pub struct WordsArgs {
    pub mode: Mode,
    /// Alphabet as comma-separated single characters, e.g. `a,b`.
    #[arg(short = 'I', long = "alphabet", allow_hyphen_values = true)]
    pub alphabet: String,
    /// Length bound.
    #[arg(short = 'L', long = "max-len")]
    pub max_len: usize,
    /// Also check the admissible-set properties of the sieve output.
    #[arg(long)]
    pub verify: bool,
    /// Words to verify instead of the sieve output (comma-separated).
    #[arg(long)]
    pub set: Option<String>,
}

fn parse_alphabet(s: &str) -> Result<Alphabet, String> {
    let mut letters = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let mut chars = tok.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => letters.push(c),
            _ => return Err(format!("alphabet letters must be single characters, got `{tok}`")),
        }
    }
    Alphabet::new(letters).map_err(|e| e.to_string())
}

/// Number of primitive necklaces of length `n` over `k` letters:
/// `(1/n) sum_{d | n} mu(d) k^{n/d}`.
pub fn aperiodic_necklaces(k: u64, n: u32) -> u64 {
    fn mobius(mut d: u32) -> i64 {
        let mut mu = 1;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if d > 1 {
            mu = -mu;
        }
        mu
    }
    let total: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * (k as i64).pow(n / d)).sum();
    (total / n as i64) as u64
}

fn necklace_items(report: &mut Report, alphabet: &Alphabet, lengths: &[usize], max_len: usize) {
    for n in 1..=max_len {
        let got = lengths.iter().filter(|&&l| l == n).count();
        report.check(format!("length {n} count"), aperiodic_necklaces(alphabet.len() as u64, n as u32), got);
    }
}

fn verify_items(report: &mut Report, y: &[Word], alphabet: &Alphabet, max_len: usize) -> CmdResult {
    let v = verify_admissible(y, alphabet, max_len).map_err(usage)?;
    report.check("words checked", v.checked, v.checked);
    report.check("non-primitive words", 0, v.non_reduced.len());
    report.check("rotation collisions", 0, v.collisions.len());
    report.check("missing primitive classes", 0, v.missing.len());
    Ok(())
}

pub fn run(args: &WordsArgs, report: &mut Report) -> CmdResult {
    let alphabet = parse_alphabet(&args.alphabet).map_err(usage)?;
    if args.max_len == 0 {
        return Err(usage("length bound must be at least 1"));
    }
    check_ceiling("L", "GENFREE_MAX_L", 14, args.max_len)?;
    let classes = enumerate_cw0(&alphabet, args.max_len).map_err(usage)?;
    match args.mode {
        Mode::Enumerate => {
            let words: Vec<String> = classes.iter().map(|c| alphabet.render(c.canonical())).collect();
            let lengths: Vec<usize> = classes.iter().map(|c| c.len()).collect();
            necklace_items(report, &alphabet, &lengths, args.max_len);
            report.line(format!("{} classes", words.len()));
            report.lines.extend(words.iter().cloned());
            report.data = json!({ "classes": words });
        }
        Mode::Sieve | Mode::Verify => {
            let y: Vec<Word> = match (&args.set, args.mode) {
                (Some(set), Mode::Verify) => set
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| alphabet.parse_word(t))
                    .collect::<Result<_, _>>()
                    .map_err(usage)?,
                (Some(_), _) => return Err(usage("--set is only used by `verify`")),
                (None, _) => {
                    let out = sieve(&alphabet, args.max_len).map_err(usage)?;
                    let y: Vec<Word> = out.admissible.iter().filter(|w| w.len() <= args.max_len).cloned().collect();
                    report.check("count matches primitive classes", classes.len(), y.len());
                    if args.verify || args.mode == Mode::Verify {
                        report.check("emitted lengths non-decreasing", true, out.min_lengths_nondecreasing());
                        report.check("working set exhausted within bound", 0, out.final_state.working.len());
                    }
                    report.data = json!({ "min_lengths": out.final_state.min_lengths });
                    y
                }
            };
            if args.verify || args.mode == Mode::Verify {
                verify_items(report, &y, &alphabet, args.max_len)?;
                let lengths: Vec<usize> = y.iter().map(Word::len).collect();
                necklace_items(report, &alphabet, &lengths, args.max_len);
            }
            let words: Vec<String> = y.iter().map(|w| alphabet.render(w)).collect();
            report.line(format!("{} words", words.len()));
            report.lines.extend(words.iter().cloned());
            if let Some(obj) = report.data.as_object_mut() {
                obj.insert("words".into(), json!(words));
            } else {
                report.data = json!({ "words": words });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_counts() {
        let got: Vec<u64> = (1..=6).map(|n| aperiodic_necklaces(2, n)).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(aperiodic_necklaces(3, 2), 3);
    }

    #[test]
    fn alphabet_parsing() {
        assert!(parse_alphabet("").is_err());
        assert!(parse_alphabet("ab,c").is_err());
        assert_eq!(parse_alphabet("a, b").unwrap().len(), 2);
    }
}
