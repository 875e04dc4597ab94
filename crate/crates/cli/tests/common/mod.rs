//! Synthetic corpora written in the on-disk input formats.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const STRANDS: [&str; 3] = ["sexist", "racist", "homophobic"];

pub struct SynthPost {
    pub post_id: String,
    pub author: String,
    pub reply_to: Option<String>,
    pub text: String,
    /// Codes given by each of the four annotators (`None`: post not annotated).
    pub votes: Option<[&'static str; 4]>,
}

pub struct SynthThread {
    pub strand: &'static str,
    pub thread_id: String,
    pub posts: Vec<SynthPost>,
}

pub struct Layout {
    pub threads: PathBuf,
    pub annotations: PathBuf,
    pub parses: PathBuf,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes `threads/<strand>/<id>.csv`, `annotations.csv` and `parses.conllu` under `root`.
pub fn write_corpus(root: &Path, threads: &[SynthThread]) -> Layout {
    let tdir = root.join("threads");
    let mut ann = String::from("post_id,annotator_id,codes\n");
    let mut conllu = String::new();
    for t in threads {
        let dir = tdir.join(t.strand);
        std::fs::create_dir_all(&dir).unwrap();
        let mut csv = String::from("post_id,author,reply_to,text\n");
        for p in &t.posts {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                p.post_id,
                p.author,
                p.reply_to.as_deref().unwrap_or(""),
                csv_field(&p.text)
            );
            if let Some(votes) = p.votes {
                for (a, code) in votes.iter().enumerate() {
                    let _ = writeln!(ann, "{},a{},{}", p.post_id, a + 1, code);
                }
            }
            let _ = writeln!(conllu, "# post_id = {}", p.post_id);
            for (j, tok) in p.text.split_whitespace().enumerate() {
                let head = if j == 0 { 0 } else { j };
                let rel = if j == 0 { "root" } else { ["nsubj", "obj", "amod", "advmod"][j % 4] };
                let _ = writeln!(conllu, "{}\t{tok}\t{tok}\tX\t_\t_\t{head}\t{rel}\t_\t_", j + 1);
            }
            conllu.push('\n');
        }
        std::fs::write(dir.join(format!("{}.csv", t.thread_id)), csv).unwrap();
    }
    let layout = Layout {
        threads: tdir,
        annotations: root.join("annotations.csv"),
        parses: root.join("parses.conllu"),
    };
    std::fs::write(&layout.annotations, ann).unwrap();
    std::fs::write(&layout.parses, conllu).unwrap();
    layout
}

/// Class-specific vocabulary so the classifier has signal.
pub struct Lexer {
    shared: Vec<String>,
    specific: Vec<Vec<String>>,
}

impl Lexer {
    pub fn new() -> Self {
        Lexer {
            shared: (0..150).map(|i| format!("common{i}")).collect(),
            specific: ["hate", "back", "counter", "chat"]
                .iter()
                .map(|stem| (0..25).map(|i| format!("{stem}{i}")).collect())
                .collect(),
        }
    }

    pub fn text(&self, r: &mut ChaCha8Rng, class: usize) -> String {
        let n = r.gen_range(6..12);
        (0..n)
            .map(|_| {
                if r.gen_bool(0.4) {
                    self.specific[class][r.gen_range(0..25)].clone()
                } else {
                    self.shared[r.gen_range(0..150)].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Codes for a post of conflated class `class`, with three or four annotators agreeing.
pub fn votes_for(r: &mut ChaCha8Rng, class: usize) -> [&'static str; 4] {
    let code = match class {
        0 => "0",
        1 => *["1", "4"].choose(r).unwrap(),
        2 => *["2", "3", "5", "2;3"].choose(r).unwrap(),
        _ => "6",
    };
    let mut v = [code; 4];
    if r.gen_bool(0.3) {
        v[r.gen_range(0..4)] = if code == "6" { "1" } else { "6" };
    }
    v
}

/// Threads whose annotated posts follow `labels` in order; `split` extra posts
/// per strand get a 2-2 vote and must be dropped.
pub fn labelled_corpus(
    strand: &'static str,
    labels: &[usize],
    split: usize,
    threads: usize,
    seed: u64,
) -> Vec<SynthThread> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let lex = Lexer::new();
    let mut out: Vec<SynthThread> = (0..threads)
        .map(|i| SynthThread {
            strand,
            thread_id: format!("{strand}_{i:03}"),
            posts: Vec::new(),
        })
        .collect();
    let total = labels.len() + split;
    for i in 0..total {
        let t = &mut out[i % threads];
        let post_id = format!("{strand}-{i:05}");
        let (class, votes) = if i < labels.len() {
            (labels[i], votes_for(&mut r, labels[i]))
        } else {
            (3, ["1", "1", "6", "6"])
        };
        let reply_to = t.posts.first().map(|p| p.post_id.clone());
        t.posts.push(SynthPost {
            post_id,
            author: format!("user{}", r.gen_range(0..40)),
            reply_to,
            text: lex.text(&mut r, class),
            votes: Some(votes),
        });
    }
    out
}

pub fn shuffled_labels(counts: [usize; 4], seed: u64) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..4).flat_map(|c| std::iter::repeat_n(c, counts[c])).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    labels
}

pub struct Run {
    pub ok: bool,
    pub stdout: String,
    pub stderr: String,
}

pub fn counterthread(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_counterthread"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs");
    Run {
        ok: out.status.success(),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

pub fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let e = e.unwrap();
        if e.path().is_file() {
            out.insert(e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap());
        }
    }
    out
}
