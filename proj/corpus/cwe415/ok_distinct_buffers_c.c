int cwe415_ok_distinct_buffers_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = calloc(4, 4);
  free(p);
  free(q);
  return 0;
}
