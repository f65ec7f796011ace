//! Single-UIO inspection: counts, the monomial coefficient, and for a
//! two-part split the full split/splice table over every Escher.

use epos_core::escher::{
    count_eschers, count_full_corrects, disjoint_pair_count, enumerate_eschers,
    first_valid_insertion, first_valid_subescher, phi, psi, AnchorConvention, EscherSeq,
};
use epos_core::ghom::m_coeff_u;
use epos_core::{Error, Int, Partition, Uio};

/// Prints the record for one UIO. Exit status: 0 all good, 1 when the round
/// trip fails, 2 on unusable input.
pub fn run_check(h: &str, lambda: &str, trace: bool) -> i32 {
    match check_inner(h, lambda, trace) {
        Ok(failed) => {
            if failed {
                1
            } else {
                0
            }
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            2
        }
    }
}

fn check_inner(h: &str, lambda: &str, trace: bool) -> Result<bool, String> {
    let uio: Uio = h.parse().map_err(|e: Error| e.to_string())?;
    let lambda: Partition = lambda.parse().map_err(|e: Error| e.to_string())?;
    if lambda.weight() as usize != uio.n() {
        return Err(format!(
            "partition {} has weight {}, the order has {} elements",
            lambda,
            lambda.weight(),
            uio.n()
        ));
    }
    println!("h={}", uio);
    println!("lambda={}", lambda);
    let m: Int = m_coeff_u(&uio, &lambda).map_err(|e| e.to_string())?;
    println!("m={}", m);
    let full = count_eschers(&uio, uio.n()).map_err(|e| e.to_string())?;
    println!("eschers={}", full);
    println!("corrects={}", count_full_corrects(&uio));

    let mut failed = false;
    if lambda.len() == 2 {
        let n = lambda.parts()[0] as usize;
        let k = lambda.parts()[1] as usize;
        let pairs = disjoint_pair_count(&uio, n, k).map_err(|e| e.to_string())?;
        println!("pairs={}", pairs);
        if n > k {
            let mut all_ok = true;
            for w in enumerate_eschers(&uio, n + k).map_err(|e| e.to_string())? {
                let (ok, line) = trace_escher(&uio, &w, n, k)?;
                if trace {
                    println!("{}", line);
                }
                all_ok &= ok;
            }
            println!("roundtrip {}", if all_ok { "PASS" } else { "FAIL" });
            failed = !all_ok;
        }
    }
    Ok(failed)
}

/// One line of the split/splice table. A mathematical failure is reported
/// in the line and flagged; only real faults escape as errors.
fn trace_escher(uio: &Uio, w: &EscherSeq, n: usize, k: usize) -> Result<(bool, String), String> {
    let conv = AnchorConvention::DEFAULT;
    let fe = match first_valid_subescher(uio, w, k) {
        Ok(Some(fe)) => fe,
        Ok(None) => return Ok((false, format!("w={} FE=none", w))),
        Err(Error::Internal(msg)) => return Ok((false, format!("w={} {}", w, msg))),
        Err(e) => return Err(e.to_string()),
    };
    let kind = if fe.exceptional {
        "exceptional"
    } else {
        "ordinary"
    };
    let pair = match phi(uio, w, n, k, conv) {
        Ok(pair) => pair,
        Err(Error::Internal(msg)) => {
            return Ok((false, format!("w={} FE={} ({}) {}", w, fe.index, kind, msg)))
        }
        Err(e) => return Err(e.to_string()),
    };
    let head = format!(
        "w={} FE={} ({}) u={} v={}",
        w,
        fe.index,
        kind,
        pair.u(),
        pair.v()
    );
    let fi = match first_valid_insertion(uio, pair.u(), pair.v()) {
        Ok(Some(fi)) => fi,
        Ok(None) => return Ok((false, format!("{} FI=none", head))),
        Err(Error::Internal(msg)) => return Ok((false, format!("{} {}", head, msg))),
        Err(e) => return Err(e.to_string()),
    };
    match psi(uio, pair.u(), pair.v(), conv) {
        Ok(Some(back)) => {
            let ok = back.elems() == w.elems();
            let verdict = if ok { "OK" } else { "MISMATCH" };
            Ok((ok, format!("{} FI={} psi={} {}", head, fi, back, verdict)))
        }
        Ok(None) => Ok((false, format!("{} FI={} psi=none", head, fi))),
        Err(Error::Internal(msg)) => Ok((false, format!("{} FI={} {}", head, fi, msg))),
        Err(e) => Err(e.to_string()),
    }
}
