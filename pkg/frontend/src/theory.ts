/**
 * Closed-form overlay curve: the large-n correction min{f,1-f} n ln2 - S_bar,
 * which is -ln(1 - min{f,1-f})/2 plus a 2/pi jump exactly at f = 1/2.
 *
 * This duplicates the producer-side formula on purpose; the renderer never
 * recomputes physics from spectra, and the duplicate is cross-checked against
 * the theory rows the CSV carries (see figure1.ts).
 */

export function theoryCorrection(f: number): number {
  if (!(f > 0 && f < 1)) {
    throw new RangeError(`subsystem fraction f=${f} outside (0, 1)`);
  }
  const fm = Math.min(f, 1 - f);
  let value = -Math.log(1 - fm) / 2;
  if (f === 0.5) {
    value += 2 / Math.PI;
  }
  return value;
}

/** Continuous branch of the overlay (without the f = 1/2 jump). */
export function theoryCorrectionSmooth(f: number): number {
  const fm = Math.min(f, 1 - f);
  return -Math.log(1 - fm) / 2;
}
