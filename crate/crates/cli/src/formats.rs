//! On-disk formats: thread CSVs, annotation CSV, line-delimited stores,
//! CoNLL-U parses and the per-command error sidecar.

use crate::error::{CliError, Result};
use counterthread::textfeat::{parse_conllu, DepUnit};
use counterthread::thread::ThreadError;
use counterthread::{
    assemble_thread, AnnotationRecord, ConflatedClass, LabelCode, PostLabel, RawPost, Strand, Thread,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

pub const THREAD_HEADER: [&str; 4] = ["post_id", "author", "reply_to", "text"];
pub const ANNOTATION_HEADER: [&str; 3] = ["post_id", "annotator_id", "codes"];

/// A per-file or per-record problem that did not stop the batch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub source: String,
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(source: impl ToString, kind: &str, message: impl ToString) -> Self {
        ErrorRecord {
            source: source.to_string(),
            kind: kind.to_string(),
            message: message.to_string(),
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn to_jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("store records serialize"));
        out.push('\n');
    }
    out
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    read_file(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CliError::parse(path, format!("line {}: {e}", i + 1))))
        .collect()
}

fn thread_error_kind(e: &ThreadError) -> &'static str {
    match e {
        ThreadError::EmptyThread => "EmptyThread",
        ThreadError::MissingSource => "MissingSource",
        ThreadError::MultipleSources(_) => "MultipleSources",
        ThreadError::DuplicatePostId(_) => "DuplicatePostId",
        ThreadError::MissingLabel(_) => "MissingLabel",
    }
}

/// Reads one thread file. Errors carry the kind used in the sidecar.
pub fn read_thread_csv(path: &Path, strand: Strand) -> std::result::Result<Thread, ErrorRecord> {
    let src = path.display().to_string();
    let malformed = |m: String| ErrorRecord::new(&src, "MalformedCsv", m);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| malformed(e.to_string()))?;
    let header = reader.headers().map_err(|e| malformed(e.to_string()))?.clone();
    if header.iter().map(str::trim).ne(THREAD_HEADER) {
        return Err(malformed(format!("expected header {}", THREAD_HEADER.join(","))));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| malformed(e.to_string()))?;
        let reply_to = row[2].trim();
        records.push(RawPost::new(
            row[0].trim(),
            row[1].trim(),
            (!reply_to.is_empty()).then_some(reply_to),
            &row[3],
        ));
    }
    let thread_id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    assemble_thread(&records, &thread_id, strand).map_err(|e| ErrorRecord::new(&src, thread_error_kind(&e), e))
}

fn csv_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")))
        .collect();
    files.sort();
    Ok(files)
}

/// Loads `dir/<strand>/<thread>.csv`. Files directly under `dir` belong to
/// `flat_strand` when one is given and are reported otherwise.
pub fn read_thread_dir(
    dir: &Path,
    admit: impl Fn(Strand) -> bool,
    flat_strand: Option<Strand>,
) -> Result<(Vec<Thread>, Vec<ErrorRecord>)> {
    let mut threads = Vec::new();
    let mut errors = Vec::new();
    let mut jobs: Vec<(PathBuf, Strand)> = Vec::new();
    for file in csv_files(dir)? {
        match flat_strand {
            Some(s) => jobs.push((file, s)),
            None => errors.push(ErrorRecord::new(
                file.display(),
                "UnknownStrand",
                "file is not inside a strand directory and no single strand was selected",
            )),
        }
    }
    for strand in Strand::ALL {
        let sub = dir.join(strand.as_str());
        if sub.is_dir() {
            jobs.extend(csv_files(&sub)?.into_iter().map(|f| (f, strand)));
        }
    }
    let mut post_ids: HashSet<String> = HashSet::new();
    for (file, strand) in jobs {
        if !admit(strand) {
            continue;
        }
        match read_thread_csv(&file, strand) {
            Ok(t) => {
                if let Some(dup) = t.posts.iter().find(|p| post_ids.contains(&p.post_id)) {
                    errors.push(ErrorRecord::new(
                        file.display(),
                        "DuplicatePostId",
                        format!("post id `{}` already used by another thread", dup.post_id),
                    ));
                    continue;
                }
                post_ids.extend(t.posts.iter().map(|p| p.post_id.clone()));
                threads.push(t);
            }
            Err(e) => errors.push(e),
        }
    }
    threads.sort_by(|a, b| (a.strand, &a.thread_id).cmp(&(b.strand, &b.thread_id)));
    Ok((threads, errors))
}

/// Parses `1;3` or `U` into label codes.
pub fn parse_codes(field: &str) -> std::result::Result<Vec<LabelCode>, String> {
    let codes: std::result::Result<Vec<LabelCode>, _> = field
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<LabelCode>().map_err(|e| e.to_string()))
        .collect();
    let codes = codes?;
    if codes.is_empty() {
        return Err("no codes".into());
    }
    if let Some(bad) = codes.iter().find(|c| matches!(c, LabelCode::Code(v) if *v > LabelCode::MAX_CODE)) {
        return Err(format!("unknown code {bad}"));
    }
    Ok(codes)
}

/// Reads the annotation CSV; rows with unparseable codes go to the error list.
pub fn read_annotations(path: &Path) -> Result<(Vec<AnnotationRecord>, Vec<ErrorRecord>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::parse(path, e))?;
    let header = reader.headers().map_err(|e| CliError::parse(path, e))?.clone();
    if header.iter().map(str::trim).ne(ANNOTATION_HEADER) {
        return Err(CliError::parse(path, format!("expected header {}", ANNOTATION_HEADER.join(","))));
    }
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| CliError::parse(path, e))?;
        let src = format!("{}:{}", path.display(), i + 2);
        match parse_codes(&row[2]) {
            Ok(codes) => records.push(AnnotationRecord::new(row[0].trim(), row[1].trim(), &codes)),
            Err(m) => errors.push(ErrorRecord::new(src, "MalformedCodes", m)),
        }
    }
    Ok((records, errors))
}

/// A post whose annotations reached consensus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldRecord {
    pub post_id: String,
    pub thread_id: String,
    pub strand: Strand,
    pub codes: BTreeSet<LabelCode>,
    pub class: ConflatedClass,
    pub disagreement: bool,
    pub insult: bool,
}

impl GoldRecord {
    pub fn post_label(&self) -> PostLabel {
        PostLabel {
            class: self.class,
            disagreement: self.disagreement,
            insult: self.insult,
        }
    }
}

/// Reads one `.conllu` file or every `.conllu` file in a directory.
pub fn read_parses(path: &Path) -> Result<BTreeMap<String, Vec<DepUnit>>> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut f: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| CliError::io(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "conllu"))
            .collect();
        f.sort();
        f
    } else {
        vec![path.to_path_buf()]
    };
    let mut out = BTreeMap::new();
    for f in files {
        let parsed = parse_conllu(&read_file(&f)?).map_err(|source| CliError::Conllu { path: f.clone(), source })?;
        for (post, units) in parsed {
            out.entry(post).or_insert_with(Vec::new).extend(units);
        }
    }
    Ok(out)
}

/// Reads `post_id,text` rows to classify.
pub fn read_posts(path: &Path) -> Result<Vec<(String, String)>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::parse(path, e))?;
    let header = reader.headers().map_err(|e| CliError::parse(path, e))?.clone();
    let id_col = header.iter().position(|h| h.trim() == "post_id");
    let text_col = header.iter().position(|h| h.trim() == "text");
    let (Some(id_col), Some(text_col)) = (id_col, text_col) else {
        return Err(CliError::parse(path, "expected post_id and text columns"));
    };
    reader
        .records()
        .map(|r| {
            let r = r.map_err(|e| CliError::parse(path, e))?;
            Ok((r[id_col].trim().to_string(), r[text_col].to_string()))
        })
        .collect()
}
