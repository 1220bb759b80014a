use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use rand::seq::index;
use serde_json::Value;

use crate::cdfbands::Sample;
use crate::error::{Error, Result};
use crate::rng::{self, Domain};

/// One evaluated hyperparameter configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub model_id: String,
    pub iteration: u64,
    pub score: f64,
    pub cost: f64,
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl InputFormat {
    /// Guesses from the file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext)
                if ext.eq_ignore_ascii_case("jsonl") || ext.eq_ignore_ascii_case("ndjson") =>
            {
                InputFormat::Jsonl
            }
            _ => InputFormat::Csv,
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "jsonl" => Ok(InputFormat::Jsonl),
            _ => Err(Error::domain(format!("unknown input format `{s}`"))),
        }
    }
}

/// Search logs grouped by model, each sorted by iteration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    models: BTreeMap<String, Vec<RunRecord>>,
}

impl Dataset {
    pub fn from_records(records: impl IntoIterator<Item = RunRecord>) -> Result<Self> {
        let mut models: BTreeMap<String, Vec<RunRecord>> = BTreeMap::new();
        for r in records {
            models.entry(r.model_id.clone()).or_default().push(r);
        }
        for (model, runs) in &mut models {
            runs.sort_by_key(|r| r.iteration);
            if let Some(w) = runs.windows(2).find(|w| w[0].iteration == w[1].iteration) {
                return Err(Error::DuplicateRecord {
                    model: model.clone(),
                    iteration: w[0].iteration,
                });
            }
        }
        Ok(Dataset { models })
    }

    pub fn model_ids(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }

    pub fn runs(&self, model: &str) -> Result<&[RunRecord]> {
        self.models
            .get(model)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownModel(model.to_string()))
    }

    /// Scores of `model`, optionally a seeded subset of `subsample` rounds
    /// drawn without replacement.
    pub fn sample(&self, model: &str, subsample: Option<usize>, seed: u64) -> Result<Sample> {
        let runs = self.runs(model)?;
        let scores: Vec<f64> = match subsample {
            None => runs.iter().map(|r| r.score).collect(),
            Some(m) if m > runs.len() => {
                return Err(Error::domain(format!(
                    "cannot subsample {m} rounds from {} for model `{model}`",
                    runs.len()
                )))
            }
            Some(m) => {
                let mut picked =
                    index::sample(&mut rng::stream(seed, Domain::Subsample, 0), runs.len(), m)
                        .into_vec();
                picked.sort_unstable();
                picked.into_iter().map(|i| runs[i].score).collect()
            }
        };
        Sample::new(scores)
    }

    /// Mean cost per round of `model`.
    pub fn average_cost(&self, model: &str) -> Result<f64> {
        let runs = self.runs(model)?;
        Ok(runs.iter().map(|r| r.cost).sum::<f64>() / runs.len() as f64)
    }
}

/// Reads a search log from `path`.
pub fn ingest(path: &Path, format: InputFormat) -> Result<Dataset> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Io(format!("cannot open {}: {e}", path.display())))?;
    match format {
        InputFormat::Csv => read_csv(file),
        InputFormat::Jsonl => read_jsonl(BufReader::new(file)),
    }
}

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_score(text: &str, line: u64) -> Result<f64> {
    let score: f64 = text
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("bad score `{text}`")))?;
    if !score.is_finite() {
        return Err(parse_error(line, format!("non-finite score `{text}`")));
    }
    Ok(score)
}

fn parse_cost(text: &str, line: u64) -> Result<f64> {
    let cost: f64 = text
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("bad cost `{text}`")))?;
    if !(cost > 0.0 && cost.is_finite()) {
        return Err(parse_error(
            line,
            format!("cost must be positive, got `{text}`"),
        ));
    }
    Ok(cost)
}

fn parse_iteration(text: &str, line: u64) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| parse_error(line, format!("bad iteration `{text}`")))
}

/// CSV with header `model_id,iteration,score[,cost]`; other columns become
/// metadata (a `metadata.` prefix is dropped).
pub fn read_csv(reader: impl Read) -> Result<Dataset> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| parse_error(1, e.to_string()))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let (model_col, iter_col, score_col) =
        (column("model_id")?, column("iteration")?, column("score")?);
    let cost_col = headers.iter().position(|h| h == "cost");
    let extra: Vec<(usize, String)> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            ![Some(model_col), Some(iter_col), Some(score_col), cost_col].contains(&Some(*i))
        })
        .map(|(i, h)| (i, h.strip_prefix("metadata.").unwrap_or(h).to_string()))
        .collect();
    let mut records = Vec::new();
    for row in csv.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(i).unwrap_or("");
        let model_id = field(model_col).to_string();
        if model_id.is_empty() {
            return Err(parse_error(line, "empty model_id"));
        }
        let cost = match cost_col.map(field) {
            Some(t) if !t.is_empty() => parse_cost(t, line)?,
            _ => 1.0,
        };
        records.push(RunRecord {
            model_id,
            iteration: parse_iteration(field(iter_col), line)?,
            score: parse_score(field(score_col), line)?,
            cost,
            metadata: extra
                .iter()
                .map(|(i, h)| (h.clone(), field(*i).to_string()))
                .collect(),
        });
    }
    Dataset::from_records(records)
}

/// One JSON object per line with keys `model_id`, `iteration`, `score` and
/// optional `cost` and `metadata`; other keys become metadata too.
pub fn read_jsonl(reader: impl BufRead) -> Result<Dataset> {
    let mut records = Vec::new();
    for (i, text) in reader.lines().enumerate() {
        let line = i as u64 + 1;
        let text = text.map_err(|e| parse_error(line, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let value: Value =
            serde_json::from_str(&text).map_err(|e| parse_error(line, e.to_string()))?;
        let Value::Object(mut obj) = value else {
            return Err(parse_error(line, "expected a JSON object"));
        };
        let mut take = |key: &str| {
            obj.remove(key)
                .ok_or_else(|| Error::MissingColumn(key.to_string()))
        };
        let as_text = |v: Value| match v {
            Value::String(s) => s,
            other => other.to_string(),
        };
        let model_id = match take("model_id")? {
            Value::String(s) if !s.is_empty() => s,
            Value::Number(n) => n.to_string(),
            _ => return Err(parse_error(line, "model_id must be a nonempty string")),
        };
        let iteration = parse_iteration(&as_text(take("iteration")?), line)?;
        let score = parse_score(&as_text(take("score")?), line)?;
        let cost = match obj.remove("cost") {
            None | Some(Value::Null) => 1.0,
            Some(v) => parse_cost(&as_text(v), line)?,
        };
        let mut metadata = BTreeMap::new();
        if let Some(Value::Object(m)) = obj.remove("metadata") {
            metadata.extend(m.into_iter().map(|(k, v)| (k, as_text(v))));
        }
        metadata.extend(obj.into_iter().map(|(k, v)| (k, as_text(v))));
        records.push(RunRecord {
            model_id,
            iteration,
            score,
            cost,
            metadata,
        });
    }
    Dataset::from_records(records)
}
