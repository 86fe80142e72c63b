/**
 * Match results table: Description, Interface, Operation, Rate, Reasons.
 * Rows appear exactly in the order the service returned them and every
 * displayed rating is the server's value; "get reasons" expands the
 * per-concept justifications.
 */

import type { Justification, MatchRow } from '../api.js';
import { el } from '../dom.js';

function reasonsTable(justifications: Justification[]): HTMLTableElement {
  const table = el(
    'table',
    { class: 'reasons' },
    el(
      'thead',
      {},
      el(
        'tr',
        {},
        el('th', { text: 'Side' }),
        el('th', { text: 'Requested concept' }),
        el('th', { text: 'Matched element' }),
        el('th', { text: 'Kind' }),
        el('th', { text: 'Annotation' }),
        el('th', { text: 'Pair rating' }),
        el('th', { text: 'Case' }),
      ),
    ),
  );
  const body = el('tbody');
  for (const j of justifications) {
    body.append(
      el(
        'tr',
        {},
        el('td', { text: j.side }),
        el('td', { text: j.requested_concept }),
        el('td', { text: j.matched_element_name || '-' }),
        el('td', { text: j.matched_element_kind || '-' }),
        el('td', { text: j.matched_annotation ?? '-' }),
        el('td', { text: j.pair_rating.toFixed(2) }),
        el('td', { text: j.match_case }),
      ),
    );
  }
  table.append(body);
  return table;
}

export function renderResultsTable(rows: MatchRow[]): HTMLElement {
  if (rows.length === 0) {
    return el('p', { class: 'empty-results', text: 'No operations above the rating threshold.' });
  }
  const table = el(
    'table',
    { class: 'results' },
    el(
      'thead',
      {},
      el(
        'tr',
        {},
        el('th', { text: 'Description' }),
        el('th', { text: 'Interface' }),
        el('th', { text: 'Operation' }),
        el('th', { text: 'Rate' }),
        el('th', { text: 'Reasons' }),
      ),
    ),
  );
  const body = el('tbody');
  for (const row of rows) {
    const expandable = el('tr', { class: 'reasons-row', style: 'display: none' });
    const cell = el('td', { colspan: '5' });
    expandable.append(cell);
    let loaded = false;
    const toggle = el('button', {
      class: 'get-reasons',
      type: 'button',
      text: 'get reasons',
      onclick: () => {
        if (!loaded) {
          cell.append(reasonsTable(row.justifications));
          loaded = true;
        }
        const hidden = expandable.style.display === 'none';
        expandable.style.display = hidden ? '' : 'none';
        toggle.textContent = hidden ? 'hide reasons' : 'get reasons';
      },
    });
    const main = el(
      'tr',
      { class: row.tier === 'NameMatch' ? 'result name-match' : 'result' },
      el('td', { text: row.service_name || row.service }),
      el('td', { text: row.interface }),
      el('td', { text: row.operation }),
      el('td', { class: 'rating', text: row.rating.toFixed(1) }),
      el('td', {}, toggle),
    );
    body.append(main, expandable);
  }
  table.append(body);
  return table;
}
