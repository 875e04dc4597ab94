//! The seven subcommands. Each returns the text it prints to stdout.

use crate::config::{RunConfig, StrandFilter};
use crate::error::{CliError, Result};
use crate::formats::{
    read_annotations, read_file, read_jsonl, read_parses, read_posts, read_thread_dir, to_jsonl, write_file,
    ErrorRecord, GoldRecord,
};
use crate::model::ModelFile;
use counterthread::annotation::{collate, consensus};
use counterthread::pipeline::{cross_validate, train_classifier, ClassifierConfig, CvOutcome, LabeledPost};
use counterthread::regression::{build_design, fit_ols, render_table, render_tsv, OlsFit};
use counterthread::svm::{EvalReport, SvmParams};
use counterthread::textfeat::{load_lexicon, ChannelSet, DepUnit, Lexicon, PostNgrams};
use counterthread::{compute_thread_stats, ConflatedClass, Strand, Thread};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::path::PathBuf;

pub const THREAD_STORE: &str = "threads.jsonl";
pub const GOLD_STORE: &str = "gold.jsonl";

fn write_errors(cfg: &RunConfig, command: &str, errors: &[ErrorRecord]) -> Result<()> {
    for e in errors {
        log::warn!("{}: {} ({})", e.source, e.message, e.kind);
    }
    write_file(&cfg.out_path(&format!("{command}.errors.jsonl")), &to_jsonl(errors))
}

fn load_threads(cfg: &RunConfig) -> Result<Vec<Thread>> {
    let path = cfg.out_path(THREAD_STORE);
    if !path.exists() {
        return Err(CliError::MissingInput("thread store (run `ingest` first)"));
    }
    read_jsonl(&path)
}

fn load_gold(cfg: &RunConfig) -> Result<Vec<GoldRecord>> {
    let path = cfg.out_path(GOLD_STORE);
    if !path.exists() {
        return Err(CliError::MissingInput("gold labels (run `collate` first)"));
    }
    read_jsonl(&path)
}

pub fn ingest(cfg: &RunConfig) -> Result<String> {
    let dir = cfg.threads.as_ref().ok_or(CliError::MissingInput("--threads directory"))?;
    let flat = match cfg.strand {
        StrandFilter::Only(s) => Some(s),
        StrandFilter::All => None,
    };
    let (threads, errors) = read_thread_dir(dir, |s| cfg.strand.admits(s), flat)?;
    if threads.is_empty() {
        log::warn!("no threads found under {}", dir.display());
    }
    write_file(&cfg.out_path(THREAD_STORE), &to_jsonl(&threads))?;
    write_errors(cfg, "ingest", &errors)?;
    let mut out = String::new();
    for strand in Strand::ALL {
        let n = threads.iter().filter(|t| t.strand == strand).count();
        let posts: usize = threads.iter().filter(|t| t.strand == strand).map(Thread::len).sum();
        if n > 0 {
            let _ = writeln!(out, "{:<11} {n} threads, {posts} posts", strand.as_str());
        }
    }
    let _ = writeln!(out, "ingested {} threads, {} file errors", threads.len(), errors.len());
    Ok(out)
}

pub fn distribution_table(gold: &[GoldRecord], strands: &[Strand]) -> (String, String) {
    let mut text = String::new();
    let mut tsv = String::from("strand\tcyber_hate\tsupport\tdisagree_insults\tgeneral\ttotal\n");
    let _ = writeln!(
        text,
        "{:<11} {:>10} {:>8} {:>17} {:>8} {:>6}",
        "Strand", "Cyber Hate", "Support", "Disagree&Insults", "General", "Total"
    );
    for &strand in strands {
        let mut counts = [0usize; ConflatedClass::COUNT];
        for g in gold.iter().filter(|g| g.strand == strand) {
            counts[g.class.index()] += 1;
        }
        let total: usize = counts.iter().sum();
        let _ = writeln!(
            text,
            "{:<11} {:>10} {:>8} {:>17} {:>8} {:>6}",
            strand.title(),
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            total
        );
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}\t{total}",
            strand.as_str(),
            counts[0],
            counts[1],
            counts[2],
            counts[3]
        );
    }
    (text, tsv)
}

pub fn collate_cmd(cfg: &RunConfig) -> Result<String> {
    let path = cfg.annotations.as_ref().ok_or(CliError::MissingInput("--annotations file"))?;
    let threads = load_threads(cfg)?;
    let mut owner: HashMap<&str, &Thread> = HashMap::new();
    for t in &threads {
        for p in &t.posts {
            owner.insert(p.post_id.as_str(), t);
        }
    }
    let (records, mut errors) = read_annotations(path)?;
    let (known, unknown): (Vec<_>, Vec<_>) = records.into_iter().partition(|r| owner.contains_key(r.post_id.as_str()));
    for r in unknown {
        errors.push(ErrorRecord::new(
            path.display(),
            "UnknownPostId",
            format!("annotation by {} for unknown post `{}`", r.annotator_id, r.post_id),
        ));
    }
    let tallies = collate(&known, cfg.annotators)?;
    let mut gold = Vec::new();
    let mut dropped = 0;
    for (post_id, tally) in &tallies {
        let thread = owner[post_id.as_str()];
        if !cfg.strand.admits(thread.strand) {
            continue;
        }
        let result = consensus(post_id, tally, cfg.annotators, cfg.threshold);
        match result.post_label() {
            Some(label) => gold.push(GoldRecord {
                post_id: post_id.clone(),
                thread_id: thread.thread_id.clone(),
                strand: thread.strand,
                codes: result.consensus_labels.clone(),
                class: label.class,
                disagreement: label.disagreement,
                insult: label.insult,
            }),
            None => dropped += 1,
        }
    }
    write_file(&cfg.out_path(GOLD_STORE), &to_jsonl(&gold))?;
    write_errors(cfg, "collate", &errors)?;
    let (text, tsv) = distribution_table(&gold, &cfg.strand.strands());
    write_file(&cfg.out_path("distribution.txt"), &text)?;
    write_file(&cfg.out_path("distribution.tsv"), &tsv)?;
    Ok(format!(
        "{text}retained {} posts, dropped {dropped} below threshold {}\n",
        gold.len(),
        cfg.threshold
    ))
}

/// Per-strand fits over consensus-filtered threads.
pub fn regression_fits(threads: &[Thread], gold: &[GoldRecord], filter: StrandFilter) -> Result<Vec<(String, OlsFit)>> {
    let labels: HashMap<String, _> = gold.iter().map(|g| (g.post_id.clone(), g.post_label())).collect();
    let mut fits = Vec::new();
    for strand in filter.strands() {
        let stats = threads
            .iter()
            .filter(|t| t.strand == strand)
            .map(|t| {
                let kept = t.retain_replies(|p| labels.contains_key(&p.post_id));
                compute_thread_stats(&kept, &labels).expect("replies filtered to labelled posts")
            })
            .collect::<Vec<_>>();
        if stats.is_empty() && filter == StrandFilter::All {
            log::warn!("no {} threads; skipping", strand.as_str());
            continue;
        }
        let regression_err = |source| CliError::Regression {
            strand: strand.as_str().to_string(),
            source,
        };
        let design = build_design(&stats).map_err(regression_err)?;
        fits.push((strand.title().to_string(), fit_ols(&design).map_err(regression_err)?));
    }
    if fits.is_empty() {
        return Err(CliError::MissingInput("threads for the selected strands"));
    }
    Ok(fits)
}

pub fn regress(cfg: &RunConfig) -> Result<String> {
    let threads = load_threads(cfg)?;
    let gold = load_gold(cfg)?;
    let fits = regression_fits(&threads, &gold, cfg.strand)?;
    let table = render_table(&fits).expect("fits share predictors");
    let tsv = render_tsv(&fits).expect("fits share predictors");
    write_file(&cfg.out_path("regression.txt"), &table)?;
    write_file(&cfg.out_path("regression.tsv"), &tsv)?;
    Ok(table)
}

fn load_lexicon_file(cfg: &RunConfig, channels: &[ChannelSet]) -> Result<Option<Lexicon>> {
    match &cfg.lexicon {
        Some(p) => Ok(Some(load_lexicon(&read_file(p)?, &p.display().to_string()))),
        None if channels.iter().any(|c| c.lexicon) => Err(CliError::MissingInput("--lexicon for the lexicon channel")),
        None => Ok(None),
    }
}

fn load_parse_map(cfg: &RunConfig) -> Result<BTreeMap<String, Vec<DepUnit>>> {
    cfg.parses.as_ref().map_or(Ok(BTreeMap::new()), |p| read_parses(p))
}

fn classifier_config(cfg: &RunConfig, channels: ChannelSet) -> Result<ClassifierConfig> {
    Ok(ClassifierConfig {
        channels,
        features: cfg.feature_config()?,
        svm: SvmParams::with_c(cfg.c),
        folds: cfg.folds,
        seed: cfg.seed,
    })
}

/// Gold posts joined with their text and parse, grouped by strand.
fn labeled_posts(cfg: &RunConfig) -> Result<BTreeMap<Strand, Vec<LabeledPost>>> {
    let threads = load_threads(cfg)?;
    let gold = load_gold(cfg)?;
    let parses = load_parse_map(cfg)?;
    let features = cfg.feature_config()?;
    let text: HashMap<&str, &str> = threads
        .iter()
        .flat_map(|t| t.posts.iter().map(|p| (p.post_id.as_str(), p.text.as_str())))
        .collect();
    let mut out: BTreeMap<Strand, Vec<LabeledPost>> = BTreeMap::new();
    for g in gold.iter().filter(|g| cfg.strand.admits(g.strand)) {
        let Some(body) = text.get(g.post_id.as_str()) else {
            log::warn!("gold post {} missing from thread store", g.post_id);
            continue;
        };
        let units = parses.get(&g.post_id).map(Vec::as_slice);
        out.entry(g.strand).or_default().push(LabeledPost {
            post_id: g.post_id.clone(),
            ngrams: PostNgrams::extract(body, units, &features),
            label: g.class,
        });
    }
    Ok(out)
}

fn missing_parse_errors(ids: &[String]) -> Vec<ErrorRecord> {
    ids.iter()
        .map(|id| ErrorRecord::new(id, "MissingParses", "dependency channel requested but post has no parse; skipped"))
        .collect()
}

fn confusion_text(report: &EvalReport) -> String {
    let mut out = String::new();
    let names: Vec<&str> = ConflatedClass::ALL.iter().map(|c| c.display_name()).collect();
    let w = names.iter().map(|n| n.len()).max().unwrap_or(0);
    let _ = write!(out, "{:<16}", "gold \\ predicted");
    for n in &names {
        let _ = write!(out, "  {n:>w$}");
    }
    out.push('\n');
    for (i, row) in report.confusion.iter().enumerate() {
        let _ = write!(out, "{:<16}", names[i]);
        for v in row {
            let _ = write!(out, "  {v:>w$}");
        }
        out.push('\n');
    }
    out
}

pub fn cv(cfg: &RunConfig) -> Result<String> {
    let channel_sets = cfg.channel_sets()?;
    let lexicon = load_lexicon_file(cfg, &channel_sets)?;
    let by_strand = labeled_posts(cfg)?;
    if by_strand.is_empty() {
        return Err(CliError::MissingInput("gold-labelled posts for the selected strands"));
    }
    let mut text = format!("cross-validation: {} folds, seed {}, C {}\n", cfg.folds, cfg.seed, cfg.c);
    let mut tsv = String::from("strand\tchannels\tclass\tprecision\trecall\tf1\tsupport\n");
    let mut errors = Vec::new();
    for (strand, posts) in &by_strand {
        let mut outcomes: Vec<CvOutcome> = Vec::new();
        for &channels in &channel_sets {
            let outcome = cross_validate(posts, &classifier_config(cfg, channels)?, lexicon.as_ref())?;
            errors.extend(missing_parse_errors(&outcome.skipped));
            outcomes.push(outcome);
        }
        let _ = writeln!(text, "\n{} ({} posts)", strand.title(), posts.len());
        let _ = writeln!(text, "{:<16} {:>9} {:>9} {:>9}", "Features", "P", "R", "F");
        for o in &outcomes {
            let r = &o.report;
            let _ = writeln!(
                text,
                "{:<16} {:>9.3} {:>9.3} {:>9.3}",
                o.channels.to_string(),
                r.weighted_precision,
                r.weighted_recall,
                r.weighted_f1
            );
            for (c, m) in ConflatedClass::ALL.iter().zip(&r.per_class) {
                let _ = writeln!(
                    tsv,
                    "{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{}",
                    strand.as_str(),
                    o.channels,
                    c.index(),
                    m.precision,
                    m.recall,
                    m.f1,
                    m.support
                );
            }
            let _ = writeln!(
                tsv,
                "{}\t{}\tweighted\t{:.6}\t{:.6}\t{:.6}\t{}",
                strand.as_str(),
                o.channels,
                r.weighted_precision,
                r.weighted_recall,
                r.weighted_f1,
                r.total
            );
        }
        for o in &outcomes {
            let _ = writeln!(text, "\nconfusion matrix, {} ({}):", strand.title(), o.channels);
            text.push_str(&confusion_text(&o.report));
            let _ = writeln!(text, "{:<16} {:>9} {:>9} {:>9} {:>8}", "class", "P", "R", "F", "support");
            for (c, m) in ConflatedClass::ALL.iter().zip(&o.report.per_class) {
                let _ = writeln!(
                    text,
                    "{:<16} {:>9.3} {:>9.3} {:>9.3} {:>8}",
                    c.index(),
                    m.precision,
                    m.recall,
                    m.f1,
                    m.support
                );
            }
        }
    }
    write_file(&cfg.out_path("cv.txt"), &text)?;
    write_file(&cfg.out_path("cv.tsv"), &tsv)?;
    write_errors(cfg, "cv", &errors)?;
    Ok(text)
}

fn model_path(cfg: &RunConfig) -> PathBuf {
    cfg.model.clone().unwrap_or_else(|| cfg.out_path("model.json"))
}

pub fn train(cfg: &RunConfig) -> Result<String> {
    let channels = cfg.channel_sets()?[0];
    let lexicon = load_lexicon_file(cfg, &[channels])?;
    let posts: Vec<LabeledPost> = labeled_posts(cfg)?.into_values().flatten().collect();
    let (usable, skipped): (Vec<&LabeledPost>, Vec<&LabeledPost>) =
        posts.iter().partition(|p| !channels.deps || p.ngrams.deps.is_some());
    let skipped: Vec<String> = skipped.iter().map(|p| p.post_id.clone()).collect();
    write_errors(cfg, "train", &missing_parse_errors(&skipped))?;
    if usable.is_empty() {
        return Err(CliError::MissingInput("gold-labelled posts for the selected strands"));
    }
    let config = classifier_config(cfg, channels)?;
    let clf = train_classifier(&usable, &config, lexicon.as_ref())?;
    let dim = clf.space.dim();
    let model = ModelFile::new(&cfg.strand.to_string(), clf, config);
    let path = model_path(cfg);
    model.save(&path)?;
    Ok(format!(
        "trained {} model on {} posts ({} features, channels {channels}), saved to {}\n",
        cfg.strand,
        usable.len(),
        dim,
        path.display()
    ))
}

pub fn classify(cfg: &RunConfig) -> Result<String> {
    let model = ModelFile::load(&model_path(cfg))?;
    let input = cfg.input.as_ref().ok_or(CliError::MissingInput("--input posts file"))?;
    let posts = read_posts(input)?;
    let parses = load_parse_map(cfg)?;
    let clf = model.classifier();
    let mut out = String::from("post_id\tclass\tlabel\n");
    let mut errors = Vec::new();
    for (id, text) in &posts {
        let ngrams = PostNgrams::extract(text, parses.get(id).map(Vec::as_slice), &model.features.config);
        match clf.classify(id, &ngrams) {
            Ok(class) => {
                let _ = writeln!(out, "{id}\t{}\t{}", class.index(), class.display_name());
            }
            Err(counterthread::pipeline::PipelineError::MissingParses(id)) => {
                errors.extend(missing_parse_errors(&[id]));
            }
            Err(e) => return Err(e.into()),
        }
    }
    write_file(&cfg.out_path("predictions.tsv"), &out)?;
    write_errors(cfg, "classify", &errors)?;
    Ok(out)
}

pub fn report(cfg: &RunConfig) -> Result<String> {
    let mut out = String::new();
    for (name, title) in [
        ("distribution.txt", "Distribution of annotations"),
        ("regression.txt", "Thread length model"),
        ("cv.txt", "Classification"),
    ] {
        let path = cfg.out_path(name);
        if path.exists() {
            let _ = writeln!(out, "== {title} ==\n{}", read_file(&path)?);
        }
    }
    if out.is_empty() {
        return Err(CliError::MissingInput("results to report (run collate, regress or cv first)"));
    }
    write_file(&cfg.out_path("report.txt"), &out)?;
    Ok(out)
}
