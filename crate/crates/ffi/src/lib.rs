//! C ABI over the helixtext pipeline.
//!
//! Objects cross the boundary as opaque handles created by a `*_new`,
//! `*_parse` or `*_open` call and released with the matching `*_free`.
//! Every fallible call returns an [`HtStatus`]; on failure a message is
//! available from [`ht_last_error_message`] on the same thread. Strings
//! handed out by the library are NUL-terminated, owned by the caller and
//! must be released with [`ht_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use helixtext::composition::{compose, enumerate_classes, permutation_count, CompositionClass};
use helixtext::frequency::{tally_letters, FrequencyTable, LetterSet, TieBreakPolicy};
use helixtext::genome_io::{drop_ambiguous, extract_windows, parse_fasta, AmbiguityMode, Direction, GenomeSequence, WindowSpec};
use helixtext::report;
use helixtext::significance::{run_null_model, NullModel};
use helixtext::substitution::{build_mapping, SubstitutionTable};
use helixtext::word_search::{edit, scan_exact, scan_reconstruction, Dictionary, ExactScanner};
use helixtext::{fixtures, Error, ErrorKind};

/// Result of every fallible call. Values 2-4 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    /// Malformed input data.
    Validation = 2,
    /// Well-formed inputs a pipeline stage cannot use (e.g. too few bases,
    /// class/letter count mismatch).
    Precondition = 3,
    Io = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtDirection {
    Forward = 0,
    Backward = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtNullModel {
    ShuffleStream = 0,
    ResampleLetters = 1,
}

/// Turn windowing parameters; coordinates are 1-based.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HtWindowSpec {
    pub anchor: u64,
    pub count: u64,
    pub size: u64,
    pub direction: HtDirection,
}

/// Opaque validated genome.
pub struct HtGenome(GenomeSequence);

/// Opaque class -> letter substitution table.
pub struct HtMapping(SubstitutionTable);

/// Opaque word list.
pub struct HtDictionary(Dictionary);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: HtStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.kind() {
            ErrorKind::Validation => HtStatus::Validation,
            ErrorKind::Precondition => HtStatus::Precondition,
            ErrorKind::Io => HtStatus::Io,
        };
        Failure { status, message: e.to_string() }
    }
}

fn fail(status: HtStatus, message: &str) -> Failure {
    Failure { status, message: message.to_string() }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HtStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("panic inside helixtext");
            HtStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(HtStatus::NullPointer, &format!("{name} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(HtStatus::InvalidUtf8, &format!("{name} is not UTF-8")))
}

unsafe fn bytes_arg<'a>(data: *const u8, len: usize, name: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(HtStatus::NullPointer, &format!("{name} is NULL")));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(HtStatus::NullPointer, &format!("{name} is NULL")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(HtStatus::NullPointer, &format!("{name} is NULL")));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn window_spec(spec: &HtWindowSpec) -> Result<WindowSpec, Failure> {
    let conv = |v: u64| usize::try_from(v).map_err(|_| fail(HtStatus::Validation, "window parameter out of range"));
    Ok(WindowSpec {
        anchor: conv(spec.anchor)?,
        count: conv(spec.count)?,
        size: conv(spec.size)?,
        direction: match spec.direction {
            HtDirection::Forward => Direction::Forward,
            HtDirection::Backward => Direction::Backward,
        },
    })
}

fn class_stream(genome: &GenomeSequence, spec: &HtWindowSpec) -> Result<Vec<CompositionClass>, Failure> {
    let windows = extract_windows(genome, &window_spec(spec)?)?;
    let (windows, _) = drop_ambiguous(windows);
    Ok(windows.iter().map(|w| compose(w).classify()).collect())
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ht_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses FASTA (first record) or a raw base string.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_genome_parse(
    data: *const u8,
    len: usize,
    skip_ambiguous: bool,
    out: *mut *mut HtGenome,
) -> HtStatus {
    guard(|| {
        let raw = bytes_arg(data, len, "data")?;
        let mode = if skip_ambiguous { AmbiguityMode::Skip } else { AmbiguityMode::Reject };
        let loaded = parse_fasta(raw, mode)?;
        put(out, Box::into_raw(Box::new(HtGenome(loaded.genome))), "out")
    })
}

/// Reads a FASTA file from `path`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_genome_open(path: *const c_char, skip_ambiguous: bool, out: *mut *mut HtGenome) -> HtStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let raw = std::fs::read(path).map_err(|e| Failure::from(Error::io(path, e)))?;
        let mode = if skip_ambiguous { AmbiguityMode::Skip } else { AmbiguityMode::Reject };
        let loaded = parse_fasta(&raw, mode)?;
        put(out, Box::into_raw(Box::new(HtGenome(loaded.genome))), "out")
    })
}

/// Number of bases, or 0 for NULL.
///
/// # Safety
/// `genome` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ht_genome_len(genome: *const HtGenome) -> usize {
    genome.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `genome` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_genome_free(genome: *mut HtGenome) {
    if !genome.is_null() {
        drop(Box::from_raw(genome));
    }
}

/// Builds the rank substitution from the genome's turn classes and a letter
/// table. With `corpus == NULL` the built-in `fig1b` letter table is used;
/// `omit` is a comma-separated letter list (NULL means `C,Q,V,X,Z`).
///
/// # Safety
/// Pointers must be valid as described; `corpus` must have `corpus_len`
/// readable bytes when not NULL.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_build(
    genome: *const HtGenome,
    spec: *const HtWindowSpec,
    corpus: *const u8,
    corpus_len: usize,
    omit: *const c_char,
    out: *mut *mut HtMapping,
) -> HtStatus {
    guard(|| {
        let genome = ref_arg(genome, "genome")?;
        let spec = ref_arg(spec, "spec")?;
        let omit: LetterSet = if omit.is_null() { LetterSet::default_omitted() } else { str_arg(omit, "omit")?.parse()? };
        let letters = if corpus.is_null() {
            let fixture = fixtures::fig1b_letters();
            FrequencyTable::from_counts(fixture.iter().filter(|(l, _)| !omit.contains(**l)).map(|(l, n)| (*l, n)))
        } else {
            tally_letters(bytes_arg(corpus, corpus_len, "corpus")?, &omit)?
        };
        let classes = class_stream(&genome.0, spec)?;
        let table = FrequencyTable::from_counts(classes.iter().map(|c| (*c, 1)));
        let mapping = build_mapping(&table, &letters, TieBreakPolicy::default())?;
        put(out, Box::into_raw(Box::new(HtMapping(mapping))), "out")
    })
}

/// The mapping obtained from the built-in class (`fig1a`) and letter
/// (`fig1b`) tables.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_fixture(out: *mut *mut HtMapping) -> HtStatus {
    guard(|| {
        let mapping = build_mapping(&fixtures::fig1a_classes(), &fixtures::fig1b_letters(), TieBreakPolicy::default())?;
        put(out, Box::into_raw(Box::new(HtMapping(mapping))), "out")
    })
}

/// Reads a `class<TAB>letter` table.
///
/// # Safety
/// `tsv` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_from_tsv(tsv: *const c_char, out: *mut *mut HtMapping) -> HtStatus {
    guard(|| {
        let mapping = SubstitutionTable::from_tsv(str_arg(tsv, "tsv")?)?;
        put(out, Box::into_raw(Box::new(HtMapping(mapping))), "out")
    })
}

/// Writes the mapping as TSV into a new string.
///
/// # Safety
/// `mapping` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_to_tsv(mapping: *const HtMapping, out: *mut *mut c_char) -> HtStatus {
    guard(|| {
        let mapping = ref_arg(mapping, "mapping")?;
        put(out, into_c_string(report::substitution_tsv(&mapping.0)), "out")
    })
}

/// Number of class/letter pairs, or 0 for NULL.
///
/// # Safety
/// `mapping` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_len(mapping: *const HtMapping) -> usize {
    mapping.as_ref().map_or(0, |m| m.0.len())
}

/// # Safety
/// `mapping` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_mapping_free(mapping: *mut HtMapping) {
    if !mapping.is_null() {
        drop(Box::from_raw(mapping));
    }
}

/// Decodes the genome's turn windows into uppercase letters.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_decode(
    genome: *const HtGenome,
    spec: *const HtWindowSpec,
    mapping: *const HtMapping,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let genome = ref_arg(genome, "genome")?;
        let spec = ref_arg(spec, "spec")?;
        let mapping = ref_arg(mapping, "mapping")?;
        let text = mapping.0.apply(&class_stream(&genome.0, spec)?)?;
        put(out, into_c_string(text), "out")
    })
}

/// Word list from `data` (one word per line).
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_dictionary_parse(
    data: *const u8,
    len: usize,
    min_len: usize,
    out: *mut *mut HtDictionary,
) -> HtStatus {
    guard(|| {
        let raw = bytes_arg(data, len, "data")?;
        let text = std::str::from_utf8(raw).map_err(|_| fail(HtStatus::InvalidUtf8, "dictionary is not UTF-8"))?;
        let dict = Dictionary::from_words(text.lines(), min_len)?;
        put(out, Box::into_raw(Box::new(HtDictionary(dict))), "out")
    })
}

/// The built-in English word list.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_dictionary_builtin(min_len: usize, out: *mut *mut HtDictionary) -> HtStatus {
    guard(|| put(out, Box::into_raw(Box::new(HtDictionary(Dictionary::builtin(min_len)?))), "out"))
}

/// # Safety
/// `dict` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_dictionary_free(dict: *mut HtDictionary) {
    if !dict.is_null() {
        drop(Box::from_raw(dict));
    }
}

/// Counts exact dictionary hits (overlaps included) in `text`.
///
/// # Safety
/// `dict` must be live; `text` NUL-terminated; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_scan_exact_count(
    dict: *const HtDictionary,
    text: *const c_char,
    out_count: *mut u64,
) -> HtStatus {
    guard(|| {
        let dict = ref_arg(dict, "dict")?;
        let text = str_arg(text, "text")?;
        put(out_count, ExactScanner::new(&dict.0).count(text.as_bytes()).total, "out_count")
    })
}

/// Exact and reconstruction hits as TSV rows
/// (`kind offset surface word cost ops`). `budget == 0` gives exact hits only.
///
/// # Safety
/// `dict` must be live; `text` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_search_tsv(
    dict: *const HtDictionary,
    text: *const c_char,
    budget: usize,
    window_slack: usize,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let dict = ref_arg(dict, "dict")?;
        let text = str_arg(text, "text")?;
        if let Some(c) = text.chars().find(|c| !c.is_ascii_uppercase()) {
            return Err(fail(HtStatus::Validation, &format!("text must be uppercase A-Z, found {c:?}")));
        }
        let mut tsv = String::from(report::MATCH_COLUMNS);
        for m in scan_exact(text, &dict.0) {
            tsv.push_str(&report::match_row("exact", &m));
        }
        if budget > 0 {
            for m in scan_reconstruction(text, &dict.0, budget, window_slack) {
                tsv.push_str(&report::match_row("reconstruction", &m));
            }
        }
        put(out, into_c_string(tsv), "out")
    })
}

/// Edit distance (transposition, insertion, deletion, substitution) between
/// two uppercase strings.
///
/// # Safety
/// `a`, `b` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_edit_distance(a: *const c_char, b: *const c_char, out: *mut usize) -> HtStatus {
    guard(|| {
        let a = str_arg(a, "a")?.to_ascii_uppercase();
        let b = str_arg(b, "b")?.to_ascii_uppercase();
        put(out, edit::distance(a.as_bytes(), b.as_bytes()), "out")
    })
}

/// Ordered 4-tuples realizing a class key such as `"0055"` or `"0-0-0-10"`.
///
/// # Safety
/// `key` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_permutation_count(key: *const c_char, out: *mut u32) -> HtStatus {
    guard(|| {
        let class: CompositionClass = str_arg(key, "key")?.parse()?;
        put(out, permutation_count(&class), "out")
    })
}

/// Newline-separated class keys for a window size and per-base maximum.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_enumerate_classes(window_size: u32, max_count: u32, out: *mut *mut c_char) -> HtStatus {
    guard(|| {
        let classes = enumerate_classes(window_size, max_count)?;
        let text: String = classes.iter().map(|c| format!("{c}\n")).collect();
        put(out, into_c_string(text), "out")
    })
}

/// Runs the Monte Carlo null model and returns the result as JSON.
///
/// # Safety
/// Handles must be live; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_simulate_json(
    genome: *const HtGenome,
    spec: *const HtWindowSpec,
    mapping: *const HtMapping,
    dict: *const HtDictionary,
    model: HtNullModel,
    trials: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let genome = ref_arg(genome, "genome")?;
        let spec = ref_arg(spec, "spec")?;
        let mapping = ref_arg(mapping, "mapping")?;
        let dict = ref_arg(dict, "dict")?;
        let model = match model {
            HtNullModel::ShuffleStream => NullModel::ShuffleStream,
            HtNullModel::ResampleLetters => NullModel::ResampleLetters,
        };
        let classes = class_stream(&genome.0, spec)?;
        let result = run_null_model(&classes, &mapping.0, &dict.0, model, trials, seed)?;
        let json = serde_json::to_string(&result).map_err(|e| fail(HtStatus::Panic, &e.to_string()))?;
        put(out_json, into_c_string(json), "out_json")
    })
}
