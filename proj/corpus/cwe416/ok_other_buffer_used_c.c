int cwe416_ok_other_buffer_used_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = calloc(4, 4);
  free(p);
  q[0] = 1;
  free(q);
  return 0;
}
