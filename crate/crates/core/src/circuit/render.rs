use super::{Circuit, Gate};

/// Text diagram with one row per wire and one column per gate, time running
/// left to right.
///
/// `●` positive control, `○` negative control, `⊕` target, `×` swap end,
/// `X` single-qubit NOT, `┼` a wire crossed by a gate's vertical span.
pub fn render_ascii(c: &Circuit) -> String {
    let n = c.n();
    let width = (n - 1).to_string().len();
    let mut rows: Vec<String> = (0..n).map(|i| format!("q{i:<width$}: ─")).collect();

    for gate in c.gates() {
        let mut cells = vec!['─'; n];
        match gate {
            Gate::X(t) => cells[*t] = 'X',
            Gate::Swap(a, b) => {
                cells[*a] = '×';
                cells[*b] = '×';
            }
            Gate::Mcx { controls, targets } => {
                for ctl in controls {
                    cells[ctl.wire] = if ctl.positive { '●' } else { '○' };
                }
                for &t in targets {
                    cells[t] = '⊕';
                }
            }
        }
        let wires = gate.wires();
        if wires.len() > 1 {
            let lo = *wires.iter().min().unwrap();
            let hi = *wires.iter().max().unwrap();
            for cell in &mut cells[lo + 1..hi] {
                if *cell == '─' {
                    *cell = '┼';
                }
            }
        }
        for (row, sym) in rows.iter_mut().zip(cells) {
            row.push(sym);
            row.push_str("──");
        }
    }

    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
