/**
 * Upload panels: create a collection, add service or ontology documents
 * from a local file or a URL. Server-side validation errors and parse
 * warnings are surfaced inline.
 */

import { ApiError, RegistryClient } from '../api.js';
import { el } from '../dom.js';

export interface UploadPanelCallbacks {
  onCollectionsChanged(): void;
  onOntologiesChanged(): void;
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return error.errors.map((e) => `${e.field}: ${e.message}`).join('; ') || `HTTP ${error.status}`;
  }
  return String(error);
}

export function renderUploadPanel(
  client: RegistryClient,
  getSelectedCollection: () => string,
  callbacks: UploadPanelCallbacks,
): HTMLElement {
  const status = el('p', { class: 'upload-status' });

  function report(message: string, isError = false) {
    status.textContent = message;
    status.className = isError ? 'upload-status error' : 'upload-status';
  }

  const collectionName = el('input', { type: 'text', placeholder: 'collection name' });
  const collectionDescription = el('input', { type: 'text', placeholder: 'description' });
  const uploader = el('input', { type: 'text', placeholder: 'uploader' });
  const createButton = el('button', {
    type: 'button',
    text: 'Create collection',
    onclick: async () => {
      try {
        const { id } = await client.createCollection(
          collectionName.value,
          collectionDescription.value,
          uploader.value,
        );
        report(`Created collection ${id}.`);
        collectionName.value = '';
        callbacks.onCollectionsChanged();
      } catch (error) {
        report(describeError(error), true);
      }
    },
  });

  const serviceFile = el('input', { type: 'file', accept: '.wsdl,.xml,.sawsdl' });
  const serviceUrl = el('input', { type: 'url', placeholder: 'https://…/service.wsdl' });
  const serviceButton = el('button', {
    type: 'button',
    text: 'Upload service',
    onclick: async () => {
      const collectionId = getSelectedCollection();
      if (!collectionId) {
        report('Select a collection first.', true);
        return;
      }
      try {
        let id: string;
        const file = serviceFile.files?.[0];
        if (file) {
          ({ id } = await client.uploadServiceFile(collectionId, file, file.name));
        } else if (serviceUrl.value) {
          ({ id } = await client.uploadServiceUrl(collectionId, serviceUrl.value));
        } else {
          report('Choose a file or enter a URL.', true);
          return;
        }
        const tree = await client.serviceTree(id);
        const warnings = tree.warnings.length
          ? ` Parse warnings: ${tree.warnings.join('; ')}`
          : '';
        report(`Uploaded service ${id}.${warnings}`, false);
        callbacks.onCollectionsChanged();
      } catch (error) {
        report(describeError(error), true);
      }
    },
  });

  const ontologyFile = el('input', { type: 'file', accept: '.owl,.rdf,.xml' });
  const ontologyUrl = el('input', { type: 'url', placeholder: 'https://…/domain.owl' });
  const ontologyButton = el('button', {
    type: 'button',
    text: 'Upload ontology',
    onclick: async () => {
      try {
        let id: string;
        const file = ontologyFile.files?.[0];
        if (file) {
          ({ id } = await client.uploadOntologyFile(file, file.name));
        } else if (ontologyUrl.value) {
          ({ id } = await client.uploadOntologyUrl(ontologyUrl.value));
        } else {
          report('Choose a file or enter a URL.', true);
          return;
        }
        report(`Uploaded ontology ${id}.`);
        callbacks.onOntologiesChanged();
      } catch (error) {
        report(describeError(error), true);
      }
    },
  });

  const panel = el(
    'section',
    { class: 'upload-panel' },
    el('h2', { text: 'Contribute' }),
    el('div', { class: 'upload-group' }, collectionName, collectionDescription, uploader, createButton),
    el('div', { class: 'upload-group' }, el('label', { text: 'Service: ' }), serviceFile, serviceUrl, serviceButton),
    el('div', { class: 'upload-group' }, el('label', { text: 'Ontology: ' }), ontologyFile, ontologyUrl, ontologyButton),
    status,
  );
  return panel;
}
