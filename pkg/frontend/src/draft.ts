/**
 * The query draft: everything the user has composed so far. The draft is
 * the single source of a /match request body, and it round-trips through
 * the URL so a composed query can be shared as a link.
 */

import type { MatchRequestBody } from './api.js';

/** Strategy options exactly as offered in the console dropdown. */
export const STRATEGY_OPTIONS = [
  { key: 'logic', label: 'Logic-based', strategy: 'logic', sim: 'monge-elkan' },
  { key: 'syn-on-sem', label: 'Syn-On-Sem', strategy: 'syn-on-sem', sim: 'monge-elkan' },
  { key: 'syn-on-syn', label: 'Syn-On-Syn', strategy: 'syn-on-syn', sim: 'monge-elkan' },
  { key: 'hybrid-me', label: 'Hybrid with MongeElkan', strategy: 'hybrid', sim: 'monge-elkan' },
  { key: 'hybrid-jaro', label: 'Hybrid with Jaro', strategy: 'hybrid', sim: 'jaro' },
] as const;

export type StrategyKey = (typeof STRATEGY_OPTIONS)[number]['key'];

export const SLIDER_MIN = 0.1;
export const SLIDER_MAX = 0.9;

export interface QueryDraft {
  collectionId: string;
  strategyKey: StrategyKey;
  inputs: string[];
  outputs: string[];
  weight: number;
  threshold: number;
}

export function emptyDraft(): QueryDraft {
  return {
    collectionId: '',
    strategyKey: 'hybrid-me',
    inputs: [],
    outputs: [],
    weight: 0.5,
    threshold: 0.5,
  };
}

export function clampSlider(value: number): number {
  if (Number.isNaN(value)) return SLIDER_MIN;
  return Math.min(Math.max(value, SLIDER_MIN), SLIDER_MAX);
}

/** Add a concept chip; duplicates within a side are ignored. */
export function addConcept(draft: QueryDraft, side: 'inputs' | 'outputs', iri: string): QueryDraft {
  if (!iri || draft[side].includes(iri)) return draft;
  return { ...draft, [side]: [...draft[side], iri] };
}

export function removeConcept(
  draft: QueryDraft,
  side: 'inputs' | 'outputs',
  iri: string,
): QueryDraft {
  return { ...draft, [side]: draft[side].filter((c) => c !== iri) };
}

/** Execute stays disabled until a collection and at least one concept are chosen. */
export function canExecute(draft: QueryDraft): boolean {
  return Boolean(draft.collectionId) && draft.inputs.length + draft.outputs.length > 0;
}

function strategyOption(key: StrategyKey) {
  const option = STRATEGY_OPTIONS.find((o) => o.key === key);
  return option ?? STRATEGY_OPTIONS[3]; // hybrid-me
}

/** The exact /match request body for this draft. */
export function matchRequestBody(draft: QueryDraft): MatchRequestBody {
  const option = strategyOption(draft.strategyKey);
  return {
    collection_id: draft.collectionId,
    strategy: option.strategy,
    sim_algorithm: option.sim,
    inputs: [...draft.inputs],
    outputs: [...draft.outputs],
    weight: clampSlider(draft.weight),
    rating_threshold: clampSlider(draft.threshold),
  };
}

export function draftToParams(draft: QueryDraft): URLSearchParams {
  const params = new URLSearchParams();
  if (draft.collectionId) params.set('c', draft.collectionId);
  params.set('s', draft.strategyKey);
  for (const iri of draft.inputs) params.append('i', iri);
  for (const iri of draft.outputs) params.append('o', iri);
  params.set('w', String(draft.weight));
  params.set('t', String(draft.threshold));
  return params;
}

export function draftFromParams(params: URLSearchParams): QueryDraft {
  const draft = emptyDraft();
  draft.collectionId = params.get('c') ?? '';
  const key = params.get('s');
  if (key && STRATEGY_OPTIONS.some((o) => o.key === key)) {
    draft.strategyKey = key as StrategyKey;
  }
  draft.inputs = [...new Set(params.getAll('i'))];
  draft.outputs = [...new Set(params.getAll('o'))];
  const weight = Number(params.get('w'));
  const threshold = Number(params.get('t'));
  if (params.has('w')) draft.weight = clampSlider(weight);
  if (params.has('t')) draft.threshold = clampSlider(threshold);
  return draft;
}
