int cwe415_ok_distinct_buffers_m_main(int c) {
  char *p = malloc(16);
  char *q = malloc(16);
  free(p);
  free(q);
  return 0;
}
