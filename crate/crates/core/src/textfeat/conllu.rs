//! Reader for externally produced CoNLL-U parses.
//!
//! Only the ID, FORM, HEAD and DEPREL columns are used. Multiword ranges
//! (`1-2`) and empty nodes (`1.1`) are skipped. A `# post_id = ...` comment
//! assigns the following sentences to that post until the next such comment.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const ROOT: &str = "ROOT";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: bad {column} value `{value}`")]
    BadField { line: usize, column: &'static str, value: String },
    #[error("line {line}: head {head} outside sentence of {len} tokens")]
    HeadOutOfRange { line: usize, head: usize, len: usize },
    #[error("line {line}: sentence is not preceded by a `# post_id = ...` comment")]
    MissingPostId { line: usize },
}

/// A typed dependency `relation(governor, dependent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DepUnit {
    pub relation: String,
    pub governor: String,
    pub dependent: String,
}

impl DepUnit {
    pub fn new(relation: &str, governor: &str, dependent: &str) -> Self {
        DepUnit {
            relation: relation.to_string(),
            governor: governor.to_string(),
            dependent: dependent.to_string(),
        }
    }

    pub fn rendered(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DepUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.relation, self.governor, self.dependent)
    }
}

struct Row {
    line: usize,
    form: String,
    head: usize,
    deprel: String,
}

fn flush(
    rows: &mut Vec<Row>,
    post: &Option<String>,
    out: &mut BTreeMap<String, Vec<DepUnit>>,
) -> Result<(), ConlluError> {
    if rows.is_empty() {
        return Ok(());
    }
    let post = post
        .as_ref()
        .ok_or(ConlluError::MissingPostId { line: rows[0].line })?;
    let units = out.entry(post.clone()).or_default();
    for row in rows.iter() {
        let governor = match row.head {
            0 => ROOT.to_string(),
            h if h <= rows.len() => rows[h - 1].form.to_lowercase(),
            h => {
                return Err(ConlluError::HeadOutOfRange {
                    line: row.line,
                    head: h,
                    len: rows.len(),
                })
            }
        };
        units.push(DepUnit {
            relation: row.deprel.to_lowercase(),
            governor,
            dependent: row.form.to_lowercase(),
        });
    }
    rows.clear();
    Ok(())
}

/// Parses a CoNLL-U document into dependency units grouped by post id, in token order.
pub fn parse_conllu(text: &str) -> Result<BTreeMap<String, Vec<DepUnit>>, ConlluError> {
    let mut out = BTreeMap::new();
    let mut post: Option<String> = None;
    let mut rows: Vec<Row> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            flush(&mut rows, &post, &mut out)?;
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "post_id" {
                    flush(&mut rows, &post, &mut out)?;
                    post = Some(value.trim().to_string());
                }
            }
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::MalformedLine {
                line,
                found: cols.len(),
            });
        }
        if cols[0].contains(['-', '.']) {
            continue;
        }
        let id: usize = cols[0].parse().map_err(|_| ConlluError::BadField {
            line,
            column: "ID",
            value: cols[0].to_string(),
        })?;
        if id != rows.len() + 1 {
            return Err(ConlluError::BadField {
                line,
                column: "ID",
                value: cols[0].to_string(),
            });
        }
        let head: usize = cols[6].parse().map_err(|_| ConlluError::BadField {
            line,
            column: "HEAD",
            value: cols[6].to_string(),
        })?;
        rows.push(Row {
            line,
            form: cols[1].to_string(),
            head,
            deprel: cols[7].to_string(),
        });
    }
    flush(&mut rows, &post, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: usize, form: &str, head: usize, rel: &str) -> String {
        format!("{id}\t{form}\t_\t_\t_\t_\t{head}\t{rel}\t_\t_")
    }

    #[test]
    fn single_token_root() {
        let doc = format!("# post_id = p1\n{}\n", line(1, "Hello", 0, "root"));
        let parsed = parse_conllu(&doc).unwrap();
        assert_eq!(parsed["p1"], vec![DepUnit::new("root", ROOT, "hello")]);
        assert_eq!(parsed["p1"][0].rendered(), "root(ROOT, hello)");
    }

    #[test]
    fn two_token_amod() {
        let doc = format!(
            "# post_id = p2\n# text = ginger babies\n{}\n{}\n\n",
            line(1, "ginger", 2, "amod"),
            line(2, "babies", 0, "root")
        );
        let parsed = parse_conllu(&doc).unwrap();
        let rendered: Vec<String> = parsed["p2"].iter().map(DepUnit::rendered).collect();
        assert_eq!(rendered, ["amod(babies, ginger)", "root(ROOT, babies)"]);
    }

    #[test]
    fn sentences_accumulate_per_post() {
        let doc = format!(
            "# post_id = a\n{}\n\n{}\n\n# post_id = b\n{}\n",
            line(1, "One", 0, "root"),
            line(1, "Two", 0, "root"),
            line(1, "Three", 0, "root")
        );
        let parsed = parse_conllu(&doc).unwrap();
        assert_eq!(parsed["a"].len(), 2);
        assert_eq!(parsed["b"].len(), 1);
    }

    #[test]
    fn skips_ranges_and_empty_nodes() {
        let doc = format!(
            "# post_id = a\n1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n{}\n{}\n1.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n",
            line(1, "do", 0, "root"),
            line(2, "n't", 1, "advmod")
        );
        assert_eq!(parse_conllu(&doc).unwrap()["a"].len(), 2);
    }

    #[test]
    fn errors() {
        let short = "# post_id = a\n1\tx\t_\n";
        assert_eq!(parse_conllu(short), Err(ConlluError::MalformedLine { line: 2, found: 3 }));
        let bad_head = format!("# post_id = a\n{}\n", line(1, "x", 5, "dep"));
        assert!(matches!(parse_conllu(&bad_head), Err(ConlluError::HeadOutOfRange { head: 5, .. })));
        let orphan = format!("{}\n", line(1, "x", 0, "root"));
        assert_eq!(parse_conllu(&orphan), Err(ConlluError::MissingPostId { line: 1 }));
    }
}
