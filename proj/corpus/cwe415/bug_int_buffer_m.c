int cwe415_bug_int_buffer_m_main(int c) {
  int *v = malloc(16);
  v[0] = c;
  free(v);
  c = c + 1;
  free(v);
  return c;
}
