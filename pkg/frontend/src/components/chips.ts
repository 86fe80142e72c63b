/** Concept chips under "Requested Input" / "Requested Output". */

import { el } from '../dom.js';

export function renderChips(
  concepts: string[],
  onRemove: (iri: string) => void,
): HTMLDivElement {
  const box = el('div', { class: 'chips' });
  for (const iri of concepts) {
    const label = iri.includes('#') ? iri.slice(iri.lastIndexOf('#') + 1) : iri;
    box.append(
      el(
        'span',
        { class: 'chip', 'data-iri': iri, title: iri },
        label,
        el('button', {
          class: 'chip-remove',
          type: 'button',
          text: '×',
          onclick: () => onRemove(iri),
        }),
      ),
    );
  }
  if (concepts.length === 0) box.append(el('span', { class: 'chips-empty', text: 'none' }));
  return box;
}
