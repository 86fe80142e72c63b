/**
 * Page assembly: collection/strategy pickers, the ontology browser, the
 * draft (chips + sliders) and the match runner. Draft state mirrors into
 * the URL so a composed query is shareable; at most one match request is
 * in flight, the latest one winning.
 */

import { ApiError, RegistryClient } from './api.js';
import { renderChips } from './components/chips.js';
import { renderOntologyTree } from './components/ontologyTree.js';
import { renderResultsTable } from './components/resultsTable.js';
import { renderUploadPanel } from './components/uploadPanel.js';
import {
  QueryDraft,
  SLIDER_MAX,
  SLIDER_MIN,
  STRATEGY_OPTIONS,
  addConcept,
  canExecute,
  clampSlider,
  draftFromParams,
  draftToParams,
  matchRequestBody,
  removeConcept,
} from './draft.js';
import { clear, el } from './dom.js';

const client = new RegistryClient('');

let draft: QueryDraft = draftFromParams(new URLSearchParams(window.location.search));
let inFlight: AbortController | null = null;

const collectionSelect = el('select', { id: 'collection' });
const strategySelect = el('select', { id: 'strategy' });
const ontologySelect = el('select', { id: 'ontology' });
const treeHost = el('div', { class: 'tree-host' });
const inputChipsHost = el('div', { id: 'input-chips' });
const outputChipsHost = el('div', { id: 'output-chips' });
const weightSlider = el('input', {
  type: 'range',
  min: String(SLIDER_MIN),
  max: String(SLIDER_MAX),
  step: '0.1',
  id: 'weight',
});
const weightValue = el('span', { class: 'slider-value' });
const thresholdSlider = el('input', {
  type: 'range',
  min: String(SLIDER_MIN),
  max: String(SLIDER_MAX),
  step: '0.1',
  id: 'threshold',
});
const thresholdValue = el('span', { class: 'slider-value' });
const executeButton = el('button', { id: 'execute', type: 'button', text: 'Execute' });
const resultsHost = el('div', { id: 'results' });
const matchStatus = el('p', { class: 'match-status' });

for (const option of STRATEGY_OPTIONS) {
  strategySelect.append(el('option', { value: option.key, text: option.label }));
}

function syncUrl() {
  const query = draftToParams(draft).toString();
  window.history.replaceState(null, '', query ? `?${query}` : window.location.pathname);
}

function updateDraft(next: QueryDraft) {
  draft = next;
  renderDraft();
  syncUrl();
}

function renderDraft() {
  collectionSelect.value = draft.collectionId;
  strategySelect.value = draft.strategyKey;
  weightSlider.value = String(draft.weight);
  thresholdSlider.value = String(draft.threshold);
  weightValue.textContent = draft.weight.toFixed(1);
  thresholdValue.textContent = draft.threshold.toFixed(1);
  clear(inputChipsHost);
  inputChipsHost.append(renderChips(draft.inputs, (iri) => updateDraft(removeConcept(draft, 'inputs', iri))));
  clear(outputChipsHost);
  outputChipsHost.append(renderChips(draft.outputs, (iri) => updateDraft(removeConcept(draft, 'outputs', iri))));
  executeButton.disabled = !canExecute(draft);
}

async function refreshCollections() {
  const collections = await client.listCollections();
  clear(collectionSelect);
  collectionSelect.append(el('option', { value: '', text: '— pick a collection —' }));
  for (const collection of collections) {
    collectionSelect.append(
      el('option', {
        value: collection.id,
        text: `${collection.name} (${collection.service_count} services)`,
      }),
    );
  }
  collectionSelect.value = draft.collectionId;
}

async function refreshOntologies() {
  const ontologies = await client.listOntologies();
  clear(ontologySelect);
  ontologySelect.append(el('option', { value: '', text: '— pick an ontology —' }));
  for (const ontology of ontologies) {
    ontologySelect.append(
      el('option', { value: ontology.id, text: `${ontology.name} (${ontology.class_count} classes)` }),
    );
  }
  clear(treeHost);
}

async function showOntology(ontologyId: string) {
  clear(treeHost);
  if (!ontologyId) return;
  const forest = await client.ontologyClasses(ontologyId);
  treeHost.append(
    renderOntologyTree(forest, {
      onAddInput: (iri) => updateDraft(addConcept(draft, 'inputs', iri)),
      onAddOutput: (iri) => updateDraft(addConcept(draft, 'outputs', iri)),
    }),
  );
}

async function execute() {
  inFlight?.abort();
  const controller = new AbortController();
  inFlight = controller;
  matchStatus.textContent = 'Matching…';
  matchStatus.className = 'match-status loading';
  clear(resultsHost);
  try {
    const rows = await client.runMatch(matchRequestBody(draft), controller.signal);
    if (controller !== inFlight) return; // a newer request superseded this one
    matchStatus.textContent = `${rows.length} operations.`;
    matchStatus.className = 'match-status';
    resultsHost.append(renderResultsTable(rows));
  } catch (error) {
    if (controller.signal.aborted) return;
    matchStatus.className = 'match-status error';
    matchStatus.textContent =
      error instanceof ApiError
        ? error.errors.map((e) => `${e.field}: ${e.message}`).join('; ')
        : String(error);
  } finally {
    if (controller === inFlight) inFlight = null;
  }
}

collectionSelect.addEventListener('change', () =>
  updateDraft({ ...draft, collectionId: collectionSelect.value }),
);
strategySelect.addEventListener('change', () =>
  updateDraft({ ...draft, strategyKey: strategySelect.value as QueryDraft['strategyKey'] }),
);
ontologySelect.addEventListener('change', () => void showOntology(ontologySelect.value));
weightSlider.addEventListener('input', () =>
  updateDraft({ ...draft, weight: clampSlider(Number(weightSlider.value)) }),
);
thresholdSlider.addEventListener('input', () =>
  updateDraft({ ...draft, threshold: clampSlider(Number(thresholdSlider.value)) }),
);
executeButton.addEventListener('click', () => void execute());

function buildPage() {
  const page = el(
    'main',
    { class: 'console' },
    el('h1', { text: 'Service matching console' }),
    el(
      'section',
      { class: 'setup' },
      el('label', { for: 'strategy', text: 'Matching strategy ' }),
      strategySelect,
      el('label', { for: 'collection', text: ' Collection of offered services ' }),
      collectionSelect,
    ),
    el(
      'section',
      { class: 'composer' },
      el(
        'div',
        { class: 'browser' },
        el('h2', { text: 'Pick ontology to form query' }),
        ontologySelect,
        treeHost,
      ),
      el(
        'div',
        { class: 'requested' },
        el('h2', { text: 'Requested Input' }),
        inputChipsHost,
        el('h2', { text: 'Requested Output' }),
        outputChipsHost,
        el('div', { class: 'slider-row' }, el('label', { for: 'weight', text: 'Input vs Output weight ' }), weightSlider, weightValue),
        el('div', { class: 'slider-row' }, el('label', { for: 'threshold', text: 'Rating threshold ' }), thresholdSlider, thresholdValue),
        executeButton,
      ),
    ),
    el('section', { class: 'results-section' }, matchStatus, resultsHost),
    renderUploadPanel(client, () => draft.collectionId, {
      onCollectionsChanged: () => void refreshCollections(),
      onOntologiesChanged: () => void refreshOntologies(),
    }),
  );
  document.body.append(page);
}

export async function start() {
  buildPage();
  renderDraft();
  await Promise.all([refreshCollections(), refreshOntologies()]);
  renderDraft();
}

if (typeof document !== 'undefined' && document.readyState !== 'loading') {
  void start();
} else if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', () => void start());
}
