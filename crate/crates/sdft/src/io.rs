//! File formats: the shared binary array layout, CSV text arrays, JSON key
//! files, and the scramble-payload container.
//!
//! Binary arrays: magic "SDFT", version byte 1, dtype byte (0 = real f64,
//! 1 = complex interleaved f64), ndim byte (1 or 2), one zero pad byte, then
//! ndim little-endian u64 dimensions, then the payload as little-endian f64.
//! CSV: one sample per line, "re,im" per line for complex data; all numbers
//! printed with 17 significant digits so text round-trips are exact.
//! Scramble payloads: the binary header (complex, 1D, N/2+1 values) plus a
//! trailing little-endian u64 recording the original signal length.

use num_complex::Complex64;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SdftError};
use crate::scramble::{keygen, KeyPurpose, ScramblePayload};
use crate::sdft1d::ThetaKey1D;
use crate::sdft2d::{PairMode2D, ThetaKey2D};

pub const MAGIC: [u8; 4] = *b"SDFT";
pub const FORMAT_VERSION: u8 = 1;

/// Fixed 17-significant-digit float formatting used by every text output.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Array payload: real samples or interleaved complex samples.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrayPayload {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl ArrayPayload {
    pub fn len(&self) -> usize {
        match self {
            ArrayPayload::Real(v) => v.len(),
            ArrayPayload::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn dtype_byte(&self) -> u8 {
        match self {
            ArrayPayload::Real(_) => 0,
            ArrayPayload::Complex(_) => 1,
        }
    }
}

/// A dimensioned array as stored on disk. CSV files carry no shape metadata,
/// so arrays read from CSV always come back with dims = [sample count].
#[derive(Debug, Clone, PartialEq)]
pub struct SdftArray {
    pub dims: Vec<u64>,
    pub payload: ArrayPayload,
}

impl SdftArray {
    pub fn new(dims: Vec<u64>, payload: ArrayPayload) -> Result<Self> {
        if dims.is_empty() || dims.len() > 2 {
            return Err(SdftError::InvalidInput(format!(
                "arrays are 1- or 2-dimensional, got {} dims",
                dims.len()
            )));
        }
        let expected = dims
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .and_then(|v| usize::try_from(v).ok())
            .ok_or_else(|| SdftError::InvalidInput("array dimensions overflow".into()))?;
        if expected != payload.len() {
            return Err(SdftError::SizeMismatch(format!(
                "dims {dims:?} describe {expected} samples, payload has {}",
                payload.len()
            )));
        }
        Ok(Self { dims, payload })
    }
}

/// True when `path` selects the CSV text format (a .csv extension, case
/// insensitive); every other extension selects the binary layout.
pub fn is_csv_path(path: &Path) -> bool {
    path.extension()
        .map(|e| e.eq_ignore_ascii_case("csv"))
        .unwrap_or(false)
}

/// Write an array to `path`: CSV when the extension is .csv (case
/// insensitive), the binary layout otherwise.
pub fn write_array(path: &Path, array: &SdftArray) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    if is_csv_path(path) {
        write_array_csv(&mut w, &array.payload)?;
    } else {
        write_array_binary(&mut w, array)?;
    }
    w.flush()?;
    Ok(())
}

/// Read an array from `path`, dispatching on the extension like [`write_array`].
pub fn read_array(path: &Path) -> Result<SdftArray> {
    let file = File::open(path)?;
    let mut r = BufReader::new(file);
    if is_csv_path(path) {
        let payload = read_array_csv(&mut r)?;
        let len = payload.len() as u64;
        SdftArray::new(vec![len], payload)
    } else {
        read_array_binary(&mut r)
    }
}

fn write_header(w: &mut impl Write, dtype: u8, dims: &[u64]) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&[FORMAT_VERSION, dtype, dims.len() as u8, 0])?;
    for &d in dims {
        w.write_all(&d.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_array_binary(w: &mut impl Write, array: &SdftArray) -> Result<()> {
    write_header(w, array.payload.dtype_byte(), &array.dims)?;
    match &array.payload {
        ArrayPayload::Real(values) => {
            for v in values {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        ArrayPayload::Complex(values) => {
            for v in values {
                w.write_all(&v.re.to_le_bytes())?;
                w.write_all(&v.im.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

/// Parsed binary header: dtype byte and dimensions.
fn read_header(r: &mut impl Read) -> Result<(u8, Vec<u64>)> {
    let mut head = [0u8; 8];
    r.read_exact(&mut head)
        .map_err(|_| SdftError::Format("file too short for an array header".into()))?;
    if head[0..4] != MAGIC {
        return Err(SdftError::Format(
            "bad magic bytes (expected \"SDFT\")".into(),
        ));
    }
    if head[4] != FORMAT_VERSION {
        return Err(SdftError::Format(format!(
            "unsupported format version {}",
            head[4]
        )));
    }
    let dtype = head[5];
    if dtype > 1 {
        return Err(SdftError::Format(format!("unknown dtype byte {dtype}")));
    }
    let ndim = head[6] as usize;
    if ndim == 0 || ndim > 2 {
        return Err(SdftError::Format(format!(
            "ndim byte must be 1 or 2, got {ndim}"
        )));
    }
    if head[7] != 0 {
        return Err(SdftError::Format("pad byte must be zero".into()));
    }
    let mut dims = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)
            .map_err(|_| SdftError::Format("file too short for its dimensions".into()))?;
        dims.push(u64::from_le_bytes(b));
    }
    Ok((dtype, dims))
}

fn f64s_from_bytes(bytes: &[u8]) -> Vec<f64> {
    bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(SdftError::InvalidInput(
            "array contains a non-finite value".into(),
        ));
    }
    Ok(())
}

pub fn read_array_binary(r: &mut impl Read) -> Result<SdftArray> {
    let (dtype, dims) = read_header(r)?;
    let count = dims
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d))
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| SdftError::Format("array dimensions overflow".into()))?;
    let floats = count
        .checked_mul(if dtype == 1 { 2 } else { 1 })
        .ok_or_else(|| SdftError::Format("array dimensions overflow".into()))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != floats * 8 {
        return Err(SdftError::Format(format!(
            "payload holds {} bytes, dims require {}",
            bytes.len(),
            floats * 8
        )));
    }
    let values = f64s_from_bytes(&bytes);
    check_finite(&values)?;
    let payload = if dtype == 0 {
        ArrayPayload::Real(values)
    } else {
        ArrayPayload::Complex(
            values
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        )
    };
    SdftArray::new(dims, payload)
}

pub fn write_array_csv(w: &mut impl Write, payload: &ArrayPayload) -> Result<()> {
    match payload {
        ArrayPayload::Real(values) => {
            for v in values {
                writeln!(w, "{}", format_f64(*v))?;
            }
        }
        ArrayPayload::Complex(values) => {
            for v in values {
                writeln!(w, "{},{}", format_f64(v.re), format_f64(v.im))?;
            }
        }
    }
    Ok(())
}

fn parse_f64(field: &str, line_no: usize) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| {
        SdftError::Format(format!(
            "line {line_no}: cannot parse {field:?} as a number"
        ))
    })
}

pub fn read_array_csv(r: &mut impl Read) -> Result<ArrayPayload> {
    let mut text = String::new();
    r.read_to_string(&mut text)
        .map_err(|_| SdftError::Format("csv file is not valid utf-8".into()))?;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        match fields.as_slice() {
            [value] => real.push(parse_f64(value, i + 1)?),
            [re, im] => complex.push(Complex64::new(parse_f64(re, i + 1)?, parse_f64(im, i + 1)?)),
            _ => {
                return Err(SdftError::Format(format!(
                    "line {}: expected 1 or 2 comma-separated fields, got {}",
                    i + 1,
                    fields.len()
                )))
            }
        }
        if !real.is_empty() && !complex.is_empty() {
            return Err(SdftError::Format(
                "csv mixes real (1-field) and complex (2-field) lines".into(),
            ));
        }
    }
    let payload = if complex.is_empty() {
        check_finite(&real)?;
        ArrayPayload::Real(real)
    } else {
        check_finite(
            &complex
                .iter()
                .flat_map(|c| [c.re, c.im])
                .collect::<Vec<_>>(),
        )?;
        ArrayPayload::Complex(complex)
    };
    if payload.is_empty() {
        return Err(SdftError::Format("csv file holds no samples".into()));
    }
    Ok(payload)
}

/// On-disk JSON shape of a key file.
#[derive(Serialize, Deserialize)]
struct KeyFileJson {
    version: u32,
    mode: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    angles: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    purpose: Option<String>,
}

/// A key loaded from disk: its dimensionality-specific key plus the optional
/// recorded purpose.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedKey {
    OneD(ThetaKey1D),
    TwoD(ThetaKey2D),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyFile {
    pub key: LoadedKey,
    pub purpose: Option<KeyPurpose>,
}

/// Parse a "0x"-prefixed hex seed of up to 16 digits.
pub fn parse_seed(text: &str) -> Result<u64> {
    let hex = text
        .strip_prefix("0x")
        .or_else(|| text.strip_prefix("0X"))
        .ok_or_else(|| SdftError::Format(format!("seed {text:?} must start with 0x")))?;
    if hex.is_empty() || hex.len() > 16 {
        return Err(SdftError::Format(format!(
            "seed {text:?} must hold 1..=16 hex digits"
        )));
    }
    u64::from_str_radix(hex, 16)
        .map_err(|_| SdftError::Format(format!("seed {text:?} is not valid hex")))
}

/// Parse a key file. 1D keys may be given as explicit angles or as a
/// SplitMix64 seed (expanded by the documented keygen procedure); 2D keys
/// are always explicit angles.
pub fn read_key_file(path: &Path) -> Result<KeyFile> {
    let text = std::fs::read_to_string(path)?;
    let parsed: KeyFileJson = serde_json::from_str(&text)
        .map_err(|e| SdftError::Format(format!("key file is not valid JSON: {e}")))?;
    if parsed.version != 1 {
        return Err(SdftError::Format(format!(
            "unsupported key file version {}",
            parsed.version
        )));
    }
    let purpose = parsed
        .purpose
        .as_deref()
        .map(KeyPurpose::parse)
        .transpose()?;
    let key = match parsed.mode.as_str() {
        "1d" => match (parsed.angles, parsed.seed) {
            (Some(angles), None) => LoadedKey::OneD(ThetaKey1D::new(parsed.n, angles)?),
            (None, Some(seed)) => {
                let seed = parse_seed(&seed)?;
                let derived = keygen(seed, parsed.n, purpose.unwrap_or(KeyPurpose::General))?;
                LoadedKey::OneD(derived)
            }
            (Some(_), Some(_)) => {
                return Err(SdftError::Format(
                    "key file gives both angles and a seed".into(),
                ))
            }
            (None, None) => {
                return Err(SdftError::Format(
                    "key file gives neither angles nor a seed".into(),
                ))
            }
        },
        "2d-sym" | "2d-conj" => {
            let mode = if parsed.mode == "2d-sym" {
                PairMode2D::Symmetric
            } else {
                PairMode2D::Conjugate
            };
            match (parsed.angles, parsed.seed) {
                (Some(angles), None) => LoadedKey::TwoD(ThetaKey2D::new(parsed.n, mode, angles)?),
                (_, Some(_)) => {
                    return Err(SdftError::Format(
                        "seed-form keys are only defined for mode \"1d\"".into(),
                    ))
                }
                (None, None) => return Err(SdftError::Format("key file gives no angles".into())),
            }
        }
        other => {
            return Err(SdftError::Format(format!(
                "unknown key mode {other:?} (expected \"1d\", \"2d-sym\" or \"2d-conj\")"
            )))
        }
    };
    Ok(KeyFile { key, purpose })
}

fn write_key_json(path: &Path, json: &KeyFileJson) -> Result<()> {
    let text = serde_json::to_string_pretty(json).expect("key serialization cannot fail");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn write_key_1d(path: &Path, key: &ThetaKey1D, purpose: Option<KeyPurpose>) -> Result<()> {
    write_key_json(
        path,
        &KeyFileJson {
            version: 1,
            mode: "1d".into(),
            n: key.n(),
            angles: Some(key.angles().to_vec()),
            seed: None,
            purpose: purpose.map(|p| p.as_str().to_string()),
        },
    )
}

pub fn write_key_2d(path: &Path, key: &ThetaKey2D) -> Result<()> {
    write_key_json(
        path,
        &KeyFileJson {
            version: 1,
            mode: key.mode().as_str().into(),
            n: key.n(),
            angles: Some(key.angles().to_vec()),
            seed: None,
            purpose: None,
        },
    )
}

/// Write a scramble payload: the binary array header for its N/2+1 complex
/// coefficients plus the trailing original-length u64. Payload files always
/// use the binary layout regardless of extension.
pub fn write_payload(path: &Path, payload: &ScramblePayload) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    write_header(&mut w, 1, &[payload.coefficients().len() as u64])?;
    for v in payload.coefficients() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.write_all(&(payload.n() as u64).to_le_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn read_payload(path: &Path) -> Result<ScramblePayload> {
    let file = File::open(path)?;
    let mut r = BufReader::new(file);
    let (dtype, dims) = read_header(&mut r)?;
    if dtype != 1 || dims.len() != 1 {
        return Err(SdftError::Format(
            "payload files hold a 1D complex array".into(),
        ));
    }
    let count = usize::try_from(dims[0])
        .map_err(|_| SdftError::Format("payload dimension overflows".into()))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != count * 16 + 8 {
        return Err(SdftError::Format(format!(
            "payload holds {} bytes, expected {} plus the trailing length",
            bytes.len(),
            count * 16
        )));
    }
    let (coeff_bytes, tail) = bytes.split_at(count * 16);
    let values = f64s_from_bytes(coeff_bytes);
    check_finite(&values)?;
    let coefficients: Vec<Complex64> = values
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    let n = u64::from_le_bytes(tail.try_into().unwrap());
    let n = usize::try_from(n)
        .map_err(|_| SdftError::Format("payload length field overflows".into()))?;
    ScramblePayload::new(n, coefficients)
}
