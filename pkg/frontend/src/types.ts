/** Wire types for the annotation service JSON API. */

export type Smell = "long_method" | "large_class" | "feature_envy";

export type Verdict = "smelly" | "clean" | "skip";

export type SampleStatus = "pending" | "labeled";

/** One row of the review queue (`GET /samples`). */
export interface SampleSummary {
  id: string;
  smell: Smell;
  origin: "original" | "injected";
  status: SampleStatus;
  label: number | null;
  entity: string;
  file: string;
}

/** A submitted (or to-be-submitted) review record. */
export interface AnnotationRecord {
  sample_id: string;
  annotator: string;
  verdict: Verdict;
  guideline_answers: boolean[];
  /** Line ranges for long method, method ids for large class, the target
   *  class id for feature envy; empty unless the verdict is "smelly". */
  action: Array<[number, number] | string>;
  timestamp: number;
}

/** Everything the reviewer sees for one sample (`GET /samples/{id}`). */
export interface SampleView {
  id: string;
  smell: Smell;
  group: string;
  origin: "original" | "injected";
  status: SampleStatus;
  label: number | null;
  entity: string;
  file: string;
  /** First and last line of the entity in its file. */
  span: [number, number];
  source: string;
  metrics: Record<string, number>;
  advisor: { positive: boolean; fired_terms: Record<string, number> };
  checklist: string[];
  opportunity_labels: string[];
  annotation: AnnotationRecord | null;
  /** long_method only: statement id -> [first, last] line. */
  statement_spans?: Record<string, [number, number]>;
  /** large_class only: member method node ids. */
  methods?: string[];
  /** feature_envy only: the posed move target. */
  candidate?: string;
}

export interface SmellProgress {
  pending: number;
  labeled: number;
  immutable: number;
}

export interface Progress {
  long_method: SmellProgress;
  large_class: SmellProgress;
  feature_envy: SmellProgress;
  records: number;
}

export const SMELLS: Smell[] = ["long_method", "large_class", "feature_envy"];
