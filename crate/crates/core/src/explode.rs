//! Explode `(T, hex)` dumps into one row per stored item.
//!
//! Input tables are comma-separated with a mandatory header naming the
//! columns `dstream_algo`, `dstream_S`, `dstream_T` and
//! `dstream_storage_hex`. Every other column is passed through verbatim.
//! Output has one row per site, ordered by input row then site:
//!
//! ```text
//! dstream_row,<passthrough...>,dstream_algo,dstream_S,dstream_T,dstream_site,dstream_Tbar,dstream_value
//! ```
//!
//! Unwritten sites leave `dstream_Tbar` and `dstream_value` empty. Rows that
//! fail to decode go to a separate rejects table (`dstream_row,error`) and do
//! not stop the batch.

use std::io::{Read, Write};

use rayon::prelude::*;

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::lookup::lookup;
use crate::surface::decode_hex;

pub const COL_ALGO: &str = "dstream_algo";
pub const COL_SITES: &str = "dstream_S";
pub const COL_T: &str = "dstream_T";
pub const COL_HEX: &str = "dstream_storage_hex";

/// One serialized surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumpRow {
    pub algo: Algorithm,
    pub sites: u64,
    pub t: u64,
    pub value_bits: u32,
    pub hex: String,
}

/// One stored item in long format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamRecord {
    pub row: usize,
    pub site: u64,
    pub tbar: Option<u64>,
    pub value: Option<u64>,
}

fn explode_one(row: usize, dump: &DumpRow) -> Result<Vec<StreamRecord>> {
    dump.algo.validate(dump.sites)?;
    let values = decode_hex(&dump.hex, dump.sites, dump.value_bits)?;
    let table = lookup(&dump.algo, dump.sites, dump.t)?;
    Ok(table
        .entries()
        .iter()
        .zip(values)
        .enumerate()
        .map(|(k, (&tbar, v))| StreamRecord {
            row,
            site: k as u64,
            tbar,
            value: tbar.map(|_| v),
        })
        .collect())
}

/// Decodes each dump independently; output order follows input order.
pub fn explode_records(rows: &[DumpRow]) -> Vec<Result<Vec<StreamRecord>>> {
    rows.par_iter()
        .enumerate()
        .map(|(i, dump)| explode_one(i, dump))
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("input is missing required column {0:?}")]
    MissingColumn(&'static str),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExplodeSummary {
    pub rows: usize,
    pub records: usize,
    pub rejects: usize,
}

fn parse_row(fields: &csv::StringRecord, cols: [usize; 4], value_bits: u32) -> Result<DumpRow> {
    let [ia, is, it, ih] = cols;
    let algo: Algorithm = fields[ia].parse()?;
    let sites = fields[is]
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad {COL_SITES} {:?}", &fields[is])))?;
    let t = fields[it]
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad {COL_T} {:?}", &fields[it])))?;
    Ok(DumpRow {
        algo,
        sites,
        t,
        value_bits,
        hex: fields[ih].trim().to_string(),
    })
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Explodes a dump table, writing records to `out` and failures to `rejects`.
pub fn explode_table<R: Read, W: Write, J: Write>(
    input: R,
    value_bits: u32,
    out: W,
    rejects: J,
) -> std::result::Result<ExplodeSummary, TableError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = rdr.headers()?.clone();
    let find = |name: &'static str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or(TableError::MissingColumn(name))
    };
    let cols = [find(COL_ALGO)?, find(COL_SITES)?, find(COL_T)?, find(COL_HEX)?];
    let passthrough: Vec<usize> = (0..headers.len()).filter(|i| !cols.contains(i)).collect();

    let records = rdr.records().collect::<std::result::Result<Vec<_>, _>>()?;
    let exploded: Vec<Result<Vec<StreamRecord>>> = records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| explode_one(i, &parse_row(rec, cols, value_bits)?))
        .collect();

    let mut wtr = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = vec!["dstream_row"];
    header.extend(passthrough.iter().map(|&i| &headers[i]));
    header.extend([COL_ALGO, COL_SITES, COL_T, "dstream_site", "dstream_Tbar", "dstream_value"]);
    wtr.write_record(&header)?;

    let mut rej = csv::Writer::from_writer(rejects);
    rej.write_record(["dstream_row", "error"])?;

    let mut summary = ExplodeSummary {
        rows: records.len(),
        ..Default::default()
    };
    for (i, (rec, result)) in records.iter().zip(exploded).enumerate() {
        match result {
            Ok(items) => {
                for item in items {
                    let mut line: Vec<String> = vec![i.to_string()];
                    line.extend(passthrough.iter().map(|&c| rec[c].to_string()));
                    line.extend([
                        rec[cols[0]].trim().to_string(),
                        rec[cols[1]].trim().to_string(),
                        rec[cols[2]].trim().to_string(),
                        item.site.to_string(),
                        opt(item.tbar),
                        opt(item.value),
                    ]);
                    wtr.write_record(&line)?;
                    summary.records += 1;
                }
            }
            Err(e) => {
                rej.write_record([i.to_string(), e.to_string()])?;
                summary.rejects += 1;
            }
        }
    }
    wtr.flush()?;
    rej.flush()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dump(algo: &str, sites: u64, t: u64, bits: u32, hex: &str) -> DumpRow {
        DumpRow {
            algo: algo.parse().unwrap(),
            sites,
            t,
            value_bits: bits,
            hex: hex.into(),
        }
    }

    #[test]
    fn records_examples() {
        let out = explode_records(&[dump("steady", 4, 8, 8, "05010703")]);
        let recs = out[0].as_ref().unwrap();
        let triples: Vec<_> = recs.iter().map(|r| (r.site, r.tbar, r.value)).collect();
        assert_eq!(
            triples,
            [(0, Some(5), Some(5)), (1, Some(1), Some(1)), (2, Some(7), Some(7)), (3, Some(3), Some(3))]
        );

        let out = explode_records(&[dump("steady", 4, 2, 8, "0a0b0000")]);
        let recs = out[0].as_ref().unwrap();
        assert_eq!(recs[0].value, Some(10));
        assert_eq!(recs[1].tbar, Some(1));
        assert_eq!((recs[2].tbar, recs[2].value), (None, None));
        assert_eq!((recs[3].tbar, recs[3].value), (None, None));

        assert!(explode_records(&[]).is_empty());
    }

    #[test]
    fn bad_rows_are_isolated() {
        let out = explode_records(&[
            dump("steady", 4, 8, 8, "0501"),
            dump("steady", 4, 8, 8, "05010703"),
            dump("tilted", 8, 1 << 40, 8, "0000000000000000"),
        ]);
        assert!(matches!(out[0], Err(Error::Parse(_))));
        assert_eq!(out[1].as_ref().unwrap()[0].row, 1);
        assert!(matches!(out[2], Err(Error::Capacity { .. })));
    }

    #[test]
    fn table_round() {
        let input = "id,dstream_algo,dstream_S,dstream_T,dstream_storage_hex\n\
                     a,steady,4,8,05010703\n\
                     b,steady,4,8,05\n";
        let mut out = Vec::new();
        let mut rej = Vec::new();
        let s = explode_table(input.as_bytes(), 8, &mut out, &mut rej).unwrap();
        assert_eq!(s, ExplodeSummary { rows: 2, records: 4, rejects: 1 });
        let out = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "dstream_row,id,dstream_algo,dstream_S,dstream_T,dstream_site,dstream_Tbar,dstream_value"
        );
        assert_eq!(lines[1], "0,a,steady,4,8,0,5,5");
        assert_eq!(lines[4], "0,a,steady,4,8,3,3,3");
        assert!(String::from_utf8(rej).unwrap().starts_with("dstream_row,error\n1,"));
    }

    #[test]
    fn missing_column() {
        let input = "dstream_algo,dstream_S,dstream_storage_hex\nsteady,4,00000000\n";
        let err = explode_table(input.as_bytes(), 8, Vec::new(), Vec::new()).unwrap_err();
        assert!(matches!(err, TableError::MissingColumn("dstream_T")));
    }
}
