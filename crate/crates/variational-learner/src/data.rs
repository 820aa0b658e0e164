use std::fmt::Write;

use crate::LearnError;

/// Samples `(x_m, y_m)` with distinct points.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl Dataset {
    pub fn new(points: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self, LearnError> {
        if points.is_empty() {
            return Err(LearnError::Parameter("dataset needs at least one sample".into()));
        }
        if points.len() != targets.len() {
            return Err(LearnError::Parameter(format!("{} points but {} targets", points.len(), targets.len())));
        }
        let d = points[0].len();
        if d == 0 {
            return Err(LearnError::Parameter("points need at least one coordinate".into()));
        }
        for p in &points {
            if p.len() != d {
                return Err(LearnError::Dimension { expected: d, got: p.len() });
            }
        }
        if points.iter().flatten().chain(&targets).any(|v| !v.is_finite()) {
            return Err(LearnError::Parameter("non-finite sample".into()));
        }
        for (k, p) in points.iter().enumerate() {
            if let Some(q) = points[..k].iter().find(|q| *q == p) {
                return Err(LearnError::Parameter(format!("duplicate point {q:?}")));
            }
        }
        Ok(Dataset { points, targets })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn d(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Reads `x1,...,xd,y` with a header row.
    pub fn from_csv(text: &str) -> Result<Self, LearnError> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| csv_error(&e, 1))?.clone();
        let d = header.len().saturating_sub(1);
        let expected: Vec<String> = (1..=d).map(|k| format!("x{k}")).chain(["y".to_string()]).collect();
        if d == 0 || header.iter().ne(expected.iter().map(String::as_str)) {
            return Err(LearnError::Csv { line: 1, message: format!("header must be {}", expected.join(",")) });
        }
        let (mut points, mut targets) = (Vec::new(), Vec::new());
        for record in reader.records() {
            let record = record.map_err(|e| csv_error(&e, 0))?;
            let line = record.position().map_or(0, |p| p.line());
            let values = record
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| LearnError::Csv { line, message: format!("cannot parse {f:?}") }))
                .collect::<Result<Vec<f64>, _>>()?;
            targets.push(values[d]);
            points.push(values[..d].to_vec());
        }
        if points.is_empty() {
            return Err(LearnError::Csv { line: 2, message: "no samples".into() });
        }
        Self::new(points, targets)
    }

    pub fn to_csv(&self) -> String {
        let mut out = (1..=self.d()).map(|k| format!("x{k},")).collect::<String>() + "y\n";
        for (p, y) in self.points.iter().zip(&self.targets) {
            for v in p {
                write!(out, "{v},").unwrap();
            }
            writeln!(out, "{y}").unwrap();
        }
        out
    }
}

fn csv_error(e: &csv::Error, fallback: u64) -> LearnError {
    let line = e.position().map_or(fallback, |p| p.line());
    LearnError::Csv { line, message: e.to_string() }
}
