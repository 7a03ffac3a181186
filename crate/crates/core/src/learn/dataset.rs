use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Categorical observations, stored column-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    names: Vec<String>,
    arities: Vec<usize>,
    columns: Vec<Vec<u32>>,
    rows: usize,
}

impl Dataset {
    /// Builds from row-major records; every cell must be below its arity.
    pub fn new(names: Vec<String>, arities: Vec<usize>, records: &[Vec<u32>]) -> Result<Self> {
        if names.len() != arities.len() {
            return Err(Error::Dataset(format!(
                "{} names but {} arities",
                names.len(),
                arities.len()
            )));
        }
        let mut columns = vec![Vec::with_capacity(records.len()); names.len()];
        for (r, record) in records.iter().enumerate() {
            if record.len() != names.len() {
                return Err(Error::Dataset(format!(
                    "row {r} has {} cells, expected {}",
                    record.len(),
                    names.len()
                )));
            }
            for (c, &cell) in record.iter().enumerate() {
                if cell as usize >= arities[c] {
                    return Err(Error::Dataset(format!(
                        "row {r}, variable {:?}: value {cell} not below arity {}",
                        names[c], arities[c]
                    )));
                }
                columns[c].push(cell);
            }
        }
        Ok(Dataset {
            names,
            arities,
            columns,
            rows: records.len(),
        })
    }

    pub(crate) fn from_columns(names: Vec<String>, arities: Vec<usize>, columns: Vec<Vec<u32>>) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        Dataset {
            names,
            arities,
            columns,
            rows,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self, v: usize) -> usize {
        self.arities[v]
    }

    pub fn column(&self, v: usize) -> &[u32] {
        &self.columns[v]
    }

    /// Reads CSV: a header of variable names, then integer category indices.
    /// Arities are inferred as one more than the largest value seen.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let names: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        if names.is_empty() || names.iter().all(String::is_empty) {
            return Err(Error::Dataset("missing header row".into()));
        }
        let mut columns = vec![Vec::new(); names.len()];
        for (r, record) in rdr.records().enumerate() {
            let record = record?;
            for (c, field) in record.iter().enumerate() {
                let value = field.parse::<u32>().map_err(|_| Error::Parse {
                    line: r + 2,
                    column: c + 1,
                    message: format!("expected a category index, found {field:?}"),
                })?;
                columns[c].push(value);
            }
        }
        let arities = columns
            .iter()
            .map(|col| col.iter().max().map_or(1, |&m| m as usize + 1))
            .collect();
        Ok(Dataset::from_columns(names, arities, columns))
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_csv(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.names)?;
        let mut record = Vec::with_capacity(self.n_vars());
        for r in 0..self.rows {
            record.clear();
            record.extend(self.columns.iter().map(|c| c[r].to_string()));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}
