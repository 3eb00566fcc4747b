use super::RawDataset;
use crate::error::{Error, Result};

/// Comma-separated input with a header row; `label_column` names the decision.
pub fn parse_csv(text: &str, label_column: &str) -> Result<RawDataset> {
    parse_csv_with_delimiter(text, label_column, b',')
}

pub fn parse_csv_with_delimiter(text: &str, label_column: &str, delimiter: u8) -> Result<RawDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.is_empty() || headers.iter().all(String::is_empty) {
        return Err(Error::Parse {
            line: 1,
            message: "empty input: header row expected".into(),
        });
    }
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::MissingLabelColumn {
            name: label_column.to_string(),
            available: headers.clone(),
        })?;

    let mut values = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let mut row = Vec::with_capacity(headers.len() - 1);
        for (j, cell) in record.iter().enumerate() {
            if j == label_idx {
                continue;
            }
            let v = cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                line,
                message: format!("non-numeric value `{cell}` in column `{}`", headers[j]),
            })?;
            row.push(v);
        }
        values.push(row);
        labels.push(record[label_idx].to_string());
    }
    Ok(RawDataset {
        attribute_names: headers
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != label_idx)
            .map(|(_, h)| h.clone())
            .collect(),
        values,
        labels,
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_column_label() {
        let d = parse_csv("x,y,label\n1,2,a\n3,4.5,b\n", "label").unwrap();
        assert_eq!(d.attribute_names, vec!["x", "y"]);
        assert_eq!(d.values, vec![vec![1.0, 2.0], vec![3.0, 4.5]]);
        assert_eq!(d.labels, vec!["a", "b"]);
    }

    #[test]
    fn label_in_the_middle_and_semicolons() {
        let d = parse_csv_with_delimiter("x;cls;y\n1;a;2\n", "cls", b';').unwrap();
        assert_eq!(d.values, vec![vec![1.0, 2.0]]);
    }

    #[test]
    fn empty_file() {
        assert!(matches!(parse_csv("", "label"), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_label_lists_columns() {
        match parse_csv("x,y\n1,2\n", "label") {
            Err(Error::MissingLabelColumn { available, .. }) => assert_eq!(available, vec!["x", "y"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_numeric_cell() {
        let err = parse_csv("x,label\n1,a\nfoo,b\n", "label").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "non-numeric value `foo` in column `x`".into()
            }
        );
    }
}
